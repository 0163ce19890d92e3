#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "randstat/random.hpp"
#include "randstat/types.hpp"

namespace randstat {

/// Uniform draw from S^{n-1} as gamma / |gamma| with gamma ~ N(0, I_n).
inline UnitWeights sample_sphere(std::size_t n, RandomSource& rng) {
  if (n == 0) throw invalid_dimension("sphere dimension must be at least 1");
  std::vector<double> gamma(n);
  double length = 0.0;
  do {
    for (auto& g : gamma) g = rng.normal();
    length = UnitWeights::norm(gamma);
  } while (length < 1e-300);
  for (auto& g : gamma) g /= length;
  return UnitWeights(std::move(gamma));
}

/// Inverse-CDF sampler for a categorical distribution. Each draw consumes one
/// uniform variate. Categories are 0-based.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const ProbabilityVector& p) : cumulative_(p.size()) {
    std::partial_sum(p.values().begin(), p.values().end(), cumulative_.begin());
  }

  std::size_t operator()(RandomSource& rng) const noexcept {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, u);
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

/// n i.i.d. categorical outcomes (the eta_i of the multinomial decomposition).
inline std::vector<std::size_t> sample_outcomes(const ProbabilityVector& p, std::size_t n,
                                                RandomSource& rng) {
  if (n == 0) throw invalid_argument("number of trials must be at least 1");
  const CategoricalSampler draw(p);
  std::vector<std::size_t> outcomes(n);
  for (auto& o : outcomes) o = draw(rng);
  return outcomes;
}

inline CountVector tally(std::span<const std::size_t> outcomes, std::size_t r) {
  std::vector<std::uint64_t> counts(r, 0);
  for (std::size_t o : outcomes) {
    if (o >= r) throw invalid_argument("outcome index out of range");
    ++counts[o];
  }
  return CountVector(std::move(counts));
}

/// Mult(n, p) counts, built from n individual categorical draws.
inline CountVector sample_multinomial(const ProbabilityVector& p, std::size_t n,
                                      RandomSource& rng) {
  const auto outcomes = sample_outcomes(p, n, rng);
  return tally(outcomes, p.size());
}

/// n independent uniform permutations of {1, ..., r} (Fisher-Yates).
inline RankingMatrix sample_rankings(std::size_t n, std::size_t r, RandomSource& rng) {
  if (r < 2) throw invalid_dimension("rankings need r >= 2 items");
  if (n == 0) throw invalid_dimension("rankings need at least one row");
  std::vector<int> ranks(n * r);
  for (std::size_t i = 0; i < n; ++i) {
    int* row = ranks.data() + i * r;
    std::iota(row, row + r, 1);
    for (std::size_t k = r - 1; k > 0; --k) {
      const auto swap_with = static_cast<std::size_t>(rng.below(k + 1));
      std::swap(row[k], row[swap_with]);
    }
  }
  return RankingMatrix(n, r, std::move(ranks));
}

}  // namespace randstat
