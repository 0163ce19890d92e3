#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randstat/detail/summation.hpp"
#include "randstat/errors.hpp"

namespace randstat {

/// Multinomial null hypothesis p = (p_1, ..., p_r): r >= 2, every entry
/// strictly positive, entries summing to one within 1e-12.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) {
      throw invalid_dimension("probability vector needs at least 2 categories, got " +
                              std::to_string(entries_.size()));
    }
    detail::CompensatedSum total;
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      const double pj = entries_[j];
      if (!std::isfinite(pj) || pj <= 0.0) {
        throw invalid_argument("probability entry " + std::to_string(j + 1) +
                               " must be strictly positive");
      }
      total += pj;
    }
    if (std::abs(total.value() - 1.0) > kSumTolerance) {
      throw invalid_argument("probabilities must sum to 1");
    }
    min_ = *std::min_element(entries_.begin(), entries_.end());
  }

  static ProbabilityVector uniform(std::size_t r) {
    if (r < 2) throw invalid_dimension("uniform null needs r >= 2");
    return ProbabilityVector(std::vector<double>(r, 1.0 / static_cast<double>(r)));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t j) const noexcept { return entries_[j]; }
  double min() const noexcept { return min_; }
  std::span<const double> values() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
  double min_ = 0.0;
};

/// Observed cell counts Y = (Y_1, ..., Y_r) with total n >= 1.
class CountVector {
 public:
  explicit CountVector(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw invalid_dimension("count vector is empty");
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    if (total_ == 0) throw invalid_argument("total count n must be at least 1");
  }

  /// Same as above but also checks the counts against a declared total.
  CountVector(std::vector<std::uint64_t> counts, std::uint64_t declared_n)
      : CountVector(std::move(counts)) {
    if (total_ != declared_n) {
      throw invalid_argument("counts sum to " + std::to_string(total_) +
                             " but n = " + std::to_string(declared_n) + " was declared");
    }
  }

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t operator[](std::size_t j) const noexcept { return counts_[j]; }
  std::span<const std::uint64_t> values() const noexcept { return counts_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// n rankings of r items; each row is a permutation of {1, ..., r}.
/// Stored row-major.
class RankingMatrix {
 public:
  RankingMatrix(std::size_t rows, std::size_t cols, std::vector<int> ranks)
      : rows_(rows), cols_(cols), ranks_(std::move(ranks)) {
    if (cols_ < 2) throw invalid_dimension("rankings need r >= 2 items");
    if (rows_ == 0) throw invalid_dimension("rankings need at least one row");
    if (ranks_.size() != rows_ * cols_) {
      throw invalid_dimension("ranking storage does not match n x r");
    }
    std::vector<char> seen(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t j = 0; j < cols_; ++j) {
        const int rank = ranks_[i * cols_ + j];
        if (rank < 1 || static_cast<std::size_t>(rank) > cols_ || seen[rank - 1]) {
          throw invalid_argument("row " + std::to_string(i + 1) + ": not a permutation");
        }
        seen[rank - 1] = 1;
      }
    }
  }

  explicit RankingMatrix(const std::vector<std::vector<int>>& rows)
      : RankingMatrix(rows.size(), rows.empty() ? 0 : rows.front().size(), flatten(rows)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int operator()(std::size_t i, std::size_t j) const noexcept { return ranks_[i * cols_ + j]; }
  std::span<const int> row(std::size_t i) const noexcept {
    return std::span<const int>(ranks_).subspan(i * cols_, cols_);
  }

 private:
  static std::vector<int> flatten(const std::vector<std::vector<int>>& rows) {
    std::vector<int> flat;
    if (rows.empty()) return flat;
    const std::size_t width = rows.front().size();
    flat.reserve(rows.size() * width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != width) {
        throw invalid_dimension("row " + std::to_string(i + 1) + ": expected " +
                                std::to_string(width) + " ranks, got " +
                                std::to_string(rows[i].size()));
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return flat;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<int> ranks_;
};

/// A point theta on the unit sphere S^{n-1}.
class UnitWeights {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit UnitWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw invalid_dimension("weights must be non-empty");
    if (std::abs(norm(weights_) - 1.0) > kNormTolerance) {
      throw invalid_argument("weights must have unit Euclidean norm");
    }
  }

  /// (1/sqrt(n), ..., 1/sqrt(n)): the weights that reproduce classical statistics.
  static UnitWeights equal(std::size_t n) {
    if (n == 0) throw invalid_dimension("weights must be non-empty");
    return UnitWeights(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  }

  /// Compensated Euclidean norm.
  static double norm(std::span<const double> v) noexcept {
    detail::CompensatedSum sq;
    for (double x : v) sq += x * x;
    return std::sqrt(sq.value());
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

}  // namespace randstat
