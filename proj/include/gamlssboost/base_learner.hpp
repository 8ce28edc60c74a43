#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gamlssboost/dataset.hpp"

namespace gamlssboost {

/// Simple linear least-squares fit b0 + b1 * x of a gradient vector on one
/// covariate.
struct LearnerFit {
  std::size_t j = 0;
  double b0 = 0.0;
  double b1 = 0.0;
  std::vector<double> fitted;
  double rss = 0.0;
};

/// Least-squares fit of u on x with intercept. A constant x yields the
/// intercept-only fit (b1 = 0, b0 = mean(u)).
LearnerFit fit_ols(std::span<const double> x, std::span<const double> u, std::size_t j = 0);

/// Best-fitting column among `candidates` by residual sum of squares. Ties go
/// to the smallest column index. Throws UsageError on an empty or
/// out-of-range candidate set.
LearnerFit select_best(const Matrix& X, std::span<const double> u,
                       std::span<const std::size_t> candidates);

/// Per-column sufficient statistics cached once per design matrix so that each
/// boosting iteration scores all columns with a single dot product each.
/// Holds a pointer to the matrix; the matrix must outlive the bank.
class LinearLearnerBank {
public:
  explicit LinearLearnerBank(const Matrix& X);

  std::size_t size() const noexcept { return mean_.size(); }

  /// RSS of the least-squares fit of u on column j.
  double rss(std::size_t j, std::span<const double> u, double u_mean, double u_ss) const;

  /// Best fit over all columns, or over `candidates` when non-empty.
  LearnerFit select_best(std::span<const double> u,
                         std::span<const std::size_t> candidates = {}) const;

private:
  const Matrix* X_;
  std::vector<double> mean_;
  std::vector<double> sxx_;  // centered sum of squares, 0 for constant columns
  Matrix centered_;
};

}  // namespace gamlssboost
