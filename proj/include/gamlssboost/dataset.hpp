#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gamlssboost {

/// Dense column-major matrix. Covariates are always accessed one column at a
/// time, so columns are stored contiguously.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds a matrix from a list of equally sized columns.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }

  /// Copy of the given rows, in the given order.
  Matrix select_rows(std::span<const std::size_t> rows) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Response vector plus covariate matrix and covariate names.
///
/// Invariants (checked by validate()): n >= 2, every entry finite, names
/// unique and one per column.
struct Dataset {
  std::vector<double> y;
  Matrix X;
  std::vector<std::string> names;

  std::size_t n() const noexcept { return y.size(); }
  std::size_t num_covariates() const noexcept { return X.cols(); }

  /// Throws DimensionError or DataError when an invariant is violated.
  void validate() const;

  Dataset subset(std::span<const std::size_t> rows) const;
};

/// Default covariate names x1..xJ.
std::vector<std::string> default_names(std::size_t count);

}  // namespace gamlssboost
