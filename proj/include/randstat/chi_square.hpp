#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "randstat/errors.hpp"
#include "randstat/random.hpp"

namespace randstat {

namespace detail {

constexpr double kGammaEps = 1e-16;
constexpr int kGammaMaxIter = 100000;

// x^a e^{-x} / Gamma(a), evaluated directly when that cannot overflow.
inline double gamma_prefactor(double a, double x) {
  if (x < 700.0 && a < 150.0 && a * std::log(x) < 700.0) {
    return std::pow(x, a) * std::exp(-x) / std::tgamma(a);
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a));
}

// P(a, x) by its power series; converges quickly for x < a + 1.
inline double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kGammaMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps) break;
  }
  return sum * gamma_prefactor(a, x);
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); for x >= a + 1.
inline double upper_gamma_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) break;
  }
  return h * gamma_prefactor(a, x);
}

}  // namespace detail

/// Chi-square distribution with a positive integer number of degrees of freedom.
class ChiSquare {
 public:
  explicit ChiSquare(int df) : df_(df) {
    if (df < 1) throw invalid_argument("chi-square degrees of freedom must be >= 1");
  }

  int df() const noexcept { return df_; }

  double cdf(double t) const {
    if (!(t > 0.0)) return 0.0;
    if (std::isinf(t)) return 1.0;
    const double a = 0.5 * df_;
    const double x = 0.5 * t;
    if (x < a + 1.0) return std::min(1.0, detail::lower_gamma_series(a, x));
    return std::max(0.0, 1.0 - detail::upper_gamma_fraction(a, x));
  }

  /// P(Z > t), computed as the upper regularized gamma for tail accuracy.
  double survival(double t) const {
    if (!(t > 0.0)) return 1.0;
    if (std::isinf(t)) return 0.0;
    const double a = 0.5 * df_;
    const double x = 0.5 * t;
    if (x < a + 1.0) return std::max(0.0, 1.0 - detail::lower_gamma_series(a, x));
    return std::min(1.0, detail::upper_gamma_fraction(a, x));
  }

  double pdf(double t) const {
    if (t < 0.0) return 0.0;
    if (t == 0.0) {
      if (df_ == 1) return std::numeric_limits<double>::infinity();
      return df_ == 2 ? 0.5 : 0.0;
    }
    const double a = 0.5 * df_;
    const double x = 0.5 * t;
    return 0.5 * std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a));
  }

  /// Inverse CDF on (0, 1): bracketing plus safeguarded Newton.
  double quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) {
      throw invalid_argument("chi-square quantile level must lie in (0, 1), got " +
                             std::to_string(q));
    }
    const double k = df_;
    double lo = 0.0;
    double hi = k + 20.0 * std::sqrt(2.0 * k) + 50.0;
    while (cdf(hi) < q) {
      lo = hi;
      hi *= 2.0;
    }

    // Wilson-Hilferty starting point.
    const double z = q < 0.5 ? detail::normal_quantile_lower(q)
                             : -detail::normal_quantile_lower(1.0 - q);
    const double s = 2.0 / (9.0 * k);
    double t = k * std::pow(std::max(1.0 - s + z * std::sqrt(s), 1e-3), 3.0);
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

    for (int iter = 0; iter < 500; ++iter) {
      const double f = cdf(t) - q;
      if (f == 0.0) break;
      if (f < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      double next = t - f / pdf(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(t, 1e-300)) {
        t = next;
        break;
      }
      t = next;
    }
    return t;
  }

 private:
  int df_;
};

inline double chi2_cdf(const ChiSquare& dist, double t) { return dist.cdf(t); }
inline double chi2_survival(const ChiSquare& dist, double t) { return dist.survival(t); }
inline double chi2_quantile(const ChiSquare& dist, double q) { return dist.quantile(q); }
inline double chi2_pdf(const ChiSquare& dist, double t) { return dist.pdf(t); }

}  // namespace randstat
