#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "randstat/chi_square.hpp"

using namespace randstat;

TEST(ChiSquare, RejectsNonPositiveDf) {
  EXPECT_THROW(ChiSquare(0), invalid_argument);
  EXPECT_NO_THROW(ChiSquare(1));
}

TEST(ChiSquareCdf, ClosedFormsAndSupport) {
  EXPECT_NEAR(ChiSquare(2).cdf(2.0 * std::numbers::ln2), 0.5, 1e-15);
  for (int df : {1, 2, 5, 50}) {
    EXPECT_EQ(ChiSquare(df).cdf(0.0), 0.0);
    EXPECT_EQ(ChiSquare(df).cdf(-3.0), 0.0);
  }
  // 2 Phi(1) - 1
  EXPECT_NEAR(ChiSquare(1).cdf(1.0), 0.682689492137085897, 1e-15);
}

TEST(ChiSquareCdf, MatchesClosedFormsAcrossRange) {
  for (double t = 0.01; t < 200.0; t *= 1.3) {
    EXPECT_NEAR(ChiSquare(2).cdf(t), oracle::chi2_df2_cdf(t), 1e-14) << t;
    EXPECT_NEAR(ChiSquare(1).cdf(t), oracle::chi2_df1_cdf(t), 1e-14) << t;
  }
}

TEST(ChiSquareCdf, MatchesQuadratureOracle) {
  for (int df = 1; df <= 10; ++df) {
    const ChiSquare dist(df);
    for (double t : {0.001, 0.1, 0.5, 1.0, 2.5, 5.0, 9.0, 15.0, 30.0, 60.0}) {
      EXPECT_NEAR(dist.cdf(t), oracle::chi2_cdf_by_quadrature(df, t), 1e-10)
          << "df=" << df << " t=" << t;
    }
  }
}

TEST(ChiSquareCdf, MonotoneOnGrid) {
  for (int df = 1; df <= 20; ++df) {
    const ChiSquare dist(df);
    double prev = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double t = 0.01 * i;
      const double f = dist.cdf(t);
      ASSERT_GE(f, prev) << "df=" << df << " t=" << t;
      prev = f;
    }
  }
}

TEST(ChiSquareCdf, LargeDfStaysAccurate) {
  // Complementarity and quadrature at the top of the supported range.
  const ChiSquare dist(200);
  for (double t : {100.0, 150.0, 199.0, 201.0, 250.0, 400.0, 10000.0}) {
    EXPECT_NEAR(dist.cdf(t) + dist.survival(t), 1.0, 1e-12) << t;
  }
  EXPECT_NEAR(dist.cdf(200.0), oracle::chi2_cdf_by_quadrature(200, 200.0), 1e-10);
}

TEST(ChiSquareSurvival, DeepTailRelativeAccuracy) {
  EXPECT_NEAR(ChiSquare(2).survival(40.0) / std::exp(-20.0), 1.0, 1e-15);
  // df = 2 survival is exp(-t/2) all the way down.
  for (double t : {100.0, 500.0, 1000.0, 1380.0}) {
    EXPECT_NEAR(ChiSquare(2).survival(t) / std::exp(-0.5 * t), 1.0, 1e-10) << t;
  }
  // df = 1 survival is erfc(sqrt(t/2)).
  for (double t : {50.0, 200.0, 1000.0}) {
    EXPECT_NEAR(ChiSquare(1).survival(t) / std::erfc(std::sqrt(0.5 * t)), 1.0, 1e-10) << t;
  }
  EXPECT_EQ(ChiSquare(3).survival(0.0), 1.0);
  EXPECT_EQ(ChiSquare(3).survival(-1.0), 1.0);
}

TEST(ChiSquareSurvival, ComplementsCdf) {
  for (int df : {1, 3, 7, 30}) {
    for (double t = 0.05; t < 80.0; t += 0.37) {
      EXPECT_NEAR(ChiSquare(df).survival(t) + ChiSquare(df).cdf(t), 1.0, 1e-12);
    }
  }
}

TEST(ChiSquareQuantile, KnownValuesAndDomain) {
  EXPECT_NEAR(ChiSquare(2).quantile(0.5), 2.0 * std::numbers::ln2, 1e-10);
  EXPECT_NEAR(ChiSquare(1).quantile(0.6826894921), 1.0, 1e-8);
  EXPECT_THROW(ChiSquare(2).quantile(0.0), invalid_argument);
  EXPECT_THROW(ChiSquare(2).quantile(1.0), invalid_argument);
  EXPECT_THROW(ChiSquare(2).quantile(-0.1), invalid_argument);
  EXPECT_THROW(ChiSquare(2).quantile(std::nan("")), invalid_argument);
}

TEST(ChiSquareQuantile, RoundTrip) {
  for (int df : {1, 3, 9}) {
    for (double q : {0.01, 0.5, 0.99}) {
      EXPECT_NEAR(ChiSquare(df).cdf(ChiSquare(df).quantile(q)), q, 1e-10);
    }
  }
  for (int df : {1, 2, 4, 17, 100, 200}) {
    for (double q : {1e-10, 1e-4, 0.05, 0.3, 0.7, 0.95, 0.9999, 1.0 - 1e-12}) {
      EXPECT_NEAR(ChiSquare(df).cdf(ChiSquare(df).quantile(q)), q, 1e-10)
          << "df=" << df << " q=" << q;
    }
  }
}

TEST(ChiSquarePdf, IntegratesToCdfDifference) {
  const ChiSquare dist(4);
  // Derivative of the CDF matches the density.
  for (double t : {0.5, 2.0, 7.0}) {
    const double h = 1e-5;
    EXPECT_NEAR((dist.cdf(t + h) - dist.cdf(t - h)) / (2 * h), dist.pdf(t), 1e-8);
  }
  EXPECT_EQ(ChiSquare(2).pdf(0.0), 0.5);
  EXPECT_TRUE(std::isinf(ChiSquare(1).pdf(0.0)));
  EXPECT_EQ(ChiSquare(3).pdf(-1.0), 0.0);
}
