#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "randstat/chi_square.hpp"
#include "randstat/errors.hpp"
#include "randstat/gof_tests.hpp"
#include "randstat/random.hpp"
#include "randstat/rank_tests.hpp"
#include "randstat/sampling.hpp"
#include "randstat/types.hpp"

namespace randstat {

enum class StatisticKind { classical_rank, randomized_rank, classical_phi, randomized_phi };

/// fixed_per_n draws one theta per grid point and measures the law
/// conditional on it; fresh_per_replicate redraws theta with every dataset.
enum class ThetaMode { fixed_per_n, fresh_per_replicate };

inline bool is_randomized(StatisticKind kind) noexcept {
  return kind == StatisticKind::randomized_rank || kind == StatisticKind::randomized_phi;
}

inline bool is_rank(StatisticKind kind) noexcept {
  return kind == StatisticKind::classical_rank || kind == StatisticKind::randomized_rank;
}

struct ExperimentConfig {
  static constexpr std::size_t kMinReplicates = 1000;

  StatisticKind kind = StatisticKind::randomized_rank;
  std::size_t r = 4;
  std::vector<double> score;   // rank family; empty means identity (Friedman)
  double lambda = 0.0;         // phi family
  std::vector<double> null_p;  // phi family; empty means uniform
  std::vector<std::size_t> n_grid{64, 128, 256, 512};
  std::size_t replicates = 200000;
  ThetaMode theta_mode = ThetaMode::fixed_per_n;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// Checks everything except the grid, which only run_experiment needs.
  void validate_family() const {
    if (r < 2) throw invalid_argument("need r >= 2");
    if (!score.empty() && score.size() != r) {
      throw invalid_argument("score has " + std::to_string(score.size()) + " values but r = " +
                             std::to_string(r));
    }
    if (!null_p.empty() && null_p.size() != r) {
      throw invalid_argument("null p has " + std::to_string(null_p.size()) +
                             " entries but r = " + std::to_string(r));
    }
    if (threads < 1) throw invalid_argument("threads must be at least 1");
  }

  void validate() const {
    validate_family();
    if (n_grid.size() < 3) throw invalid_argument("need >= 3 grid points");
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
      if (n_grid[g] < 2) throw invalid_argument("grid sample sizes must be >= 2");
      if (g > 0 && n_grid[g] <= n_grid[g - 1]) {
        throw invalid_argument("n grid must be strictly increasing");
      }
    }
    if (replicates < kMinReplicates) {
      throw invalid_argument("need at least " + std::to_string(kMinReplicates) + " replicates");
    }
  }
};

/// Null model for one statistic family, resolved from a config.
class NullModel {
 public:
  explicit NullModel(const ExperimentConfig& config)
      : kind_(config.kind),
        r_(config.r),
        score_(config.score.empty() ? ScoreFunction::identity(config.r)
                                    : ScoreFunction(config.score)),
        p_(config.null_p.empty() ? ProbabilityVector::uniform(config.r)
                                 : ProbabilityVector(config.null_p)),
        phi_(phi_lambda(config.lambda)),
        theta_mode_(config.theta_mode) {}

  StatisticKind kind() const noexcept { return kind_; }
  std::size_t r() const noexcept { return r_; }
  int df() const noexcept { return static_cast<int>(r_ - 1); }

  /// One statistic drawn under H0, or nullopt if the randomized phi argument
  /// left the domain of phi.
  std::optional<double> draw(std::size_t n, RandomSource& rng,
                             const std::optional<UnitWeights>& fixed_theta) const {
    switch (kind_) {
      case StatisticKind::classical_rank:
        return classical_rank_statistic(sample_rankings(n, r_, rng), score_).statistic;
      case StatisticKind::randomized_rank: {
        const auto rankings = sample_rankings(n, r_, rng);
        const auto theta = fixed_theta ? *fixed_theta : sample_sphere(n, rng);
        return randomized_rank_statistic(rankings, score_, theta).statistic;
      }
      case StatisticKind::classical_phi:
        try {
          return classical_phi_statistic(sample_multinomial(p_, n, rng), p_, phi_).statistic;
        } catch (const phi_domain_error&) {
          return std::nullopt;
        }
      case StatisticKind::randomized_phi: {
        const auto outcomes = sample_outcomes(p_, n, rng);
        const auto theta = fixed_theta ? *fixed_theta : sample_sphere(n, rng);
        try {
          return randomized_phi_statistic(outcomes, p_, phi_, theta).statistic;
        } catch (const phi_domain_error&) {
          return std::nullopt;
        }
      }
    }
    return std::nullopt;
  }

  /// M null statistics at sample size n. Replicate k uses stream.substream(k + 1)
  /// and a fixed theta (if any) comes from stream.substream(0), so the output is
  /// identical for every thread count. Excluded replicates are NaN.
  std::vector<double> simulate(std::size_t n, std::size_t replicates, const RandomSource& stream,
                               unsigned threads) const {
    std::optional<UnitWeights> fixed_theta;
    if (is_randomized(kind_) && theta_mode_ == ThetaMode::fixed_per_n) {
      auto theta_rng = stream.substream(0);
      fixed_theta = sample_sphere(n, theta_rng);
    }
    std::vector<double> out(replicates, std::numeric_limits<double>::quiet_NaN());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        auto rng = stream.substream(k + 1);
        if (auto value = draw(n, rng, fixed_theta)) out[k] = *value;
      }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, replicates));
    if (workers == 1) {
      work(0, replicates);
      return out;
    }
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = replicates * w / workers;
        const std::size_t end = replicates * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
          try {
            work(begin, end);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    return out;
  }

 private:
  StatisticKind kind_;
  std::size_t r_;
  ScoreFunction score_;
  ProbabilityVector p_;
  PhiSpec phi_;
  ThetaMode theta_mode_;
};

/// Exact sup_t |F_M(t) - F(t)| between the empirical CDF of `samples` and
/// the chi-square CDF.
inline double empirical_ks_distance(std::vector<double> samples, const ChiSquare& dist) {
  if (samples.empty()) throw invalid_argument("KS distance needs at least one sample");
  for (double x : samples) {
    if (std::isnan(x)) throw invalid_argument("KS distance: NaN sample");
  }
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = dist.cdf(samples[i]);
    const double above = static_cast<double>(i + 1) / m - f;
    const double below = f - static_cast<double>(i) / m;
    d = std::max({d, std::abs(above), std::abs(below)});
  }
  return std::min(d, 1.0);
}

/// Survival function of the Kolmogorov distribution.
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi-theta form, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

struct TwoSampleKs {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// (Stephens' small-sample correction).
inline TwoSampleKs two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw invalid_argument("two-sample KS needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double effective = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_survival((effective + 0.12 + 0.11 / effective) * d)};
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares of log(dk) on log(n).
inline LinearFit fit_log_log(std::span<const double> n, std::span<const double> dk) {
  if (n.size() != dk.size() || n.size() < 2) {
    throw invalid_argument("log-log fit needs matching inputs with at least 2 points");
  }
  const std::size_t k = n.size();
  std::vector<double> x(k);
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(n[i] > 0.0) || !(dk[i] > 0.0)) throw invalid_argument("log-log fit needs positive data");
    x[i] = std::log(n[i]);
    y[i] = std::log(dk[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw invalid_argument("log-log fit needs distinct sample sizes");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.resize(k);
  for (std::size_t i = 0; i < k; ++i) fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
  return fit;
}

struct GridPointEstimate {
  std::size_t n = 0;
  double dk = 0.0;
  double se = 0.0;  // KS noise floor proxy 1/sqrt(M)
  double excluded_frac = 0.0;
  /// dk does not exceed the noise floor; the point carries no rate information.
  bool noise_limited = false;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<GridPointEstimate> points;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

namespace detail {

constexpr double kMaxExcludedFraction = 0.05;

inline std::vector<double> kept_samples(const std::vector<double>& raw, std::size_t n,
                                        double& excluded_frac) {
  std::vector<double> kept;
  kept.reserve(raw.size());
  for (double x : raw) {
    if (!std::isnan(x)) kept.push_back(x);
  }
  excluded_frac = 1.0 - static_cast<double>(kept.size()) / static_cast<double>(raw.size());
  if (excluded_frac > kMaxExcludedFraction) {
    throw experiment_error("at n = " + std::to_string(n) + ", " +
                           std::to_string(100.0 * excluded_frac) +
                           "% of replicates left the domain of phi (limit 5%)");
  }
  return kept;
}

}  // namespace detail

/// Sweeps the n grid, estimating d_K between the statistic's null law and
/// chi-square(r - 1) at each point, then fits the log-log decay slope.
/// Grid point g uses RandomSource(seed).substream(g).
inline ConvergenceReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const NullModel model(config);
  const ChiSquare limit(model.df());
  const RandomSource root(config.seed);

  ConvergenceReport report;
  report.config = config;
  std::vector<double> ns;
  std::vector<double> dks;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const std::size_t n = config.n_grid[g];
    const auto raw = model.simulate(n, config.replicates, root.substream(g), config.threads);
    GridPointEstimate point;
    point.n = n;
    const auto kept = detail::kept_samples(raw, n, point.excluded_frac);
    point.dk = empirical_ks_distance(kept, limit);
    point.se = 1.0 / std::sqrt(static_cast<double>(config.replicates));
    point.noise_limited = point.dk <= point.se;
    report.points.push_back(point);
    ns.push_back(static_cast<double>(n));
    dks.push_back(point.dk);
  }
  const auto fit = fit_log_log(ns, dks);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.residuals = fit.residuals;
  return report;
}

/// Empirical type-I error: fraction of M null datasets whose statistic exceeds
/// the (1 - alpha) chi-square quantile. Uses the family fields of `family`
/// (kind, r, score, lambda, null_p, theta_mode, threads); its grid is ignored.
inline double calibration_check(const ExperimentConfig& family, std::size_t n,
                                std::size_t replicates, double alpha, const RandomSource& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_argument("alpha must lie in (0, 1)");
  if (replicates == 0) throw invalid_argument("need at least one replicate");
  if (n < 2) throw invalid_argument("sample size must be >= 2");
  family.validate_family();
  const NullModel model(family);
  const double critical = ChiSquare(model.df()).quantile(1.0 - alpha);
  const auto raw = model.simulate(n, replicates, rng, family.threads);
  double excluded = 0.0;
  const auto kept = detail::kept_samples(raw, n, excluded);
  const auto rejections = std::count_if(kept.begin(), kept.end(),
                                        [&](double t) { return t > critical; });
  return static_cast<double>(rejections) / static_cast<double>(kept.size());
}

}  // namespace randstat
