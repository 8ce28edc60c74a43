#include "gamlssboost/dataset.hpp"

#include <cmath>
#include <unordered_set>

#include "gamlssboost/error.hpp"

namespace gamlssboost {

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw DimensionError("column " + std::to_string(j) + " has " +
                           std::to_string(columns[j].size()) + " rows, expected " +
                           std::to_string(rows));
    }
    std::copy(columns[j].begin(), columns[j].end(), m.col(j).begin());
  }
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const auto src = col(j);
    auto dst = out.col(j);
    for (std::size_t r = 0; r < rows.size(); ++r) dst[r] = src[rows[r]];
  }
  return out;
}

void Dataset::validate() const {
  if (y.size() < 2) throw DataError("dataset needs at least 2 observations");
  if (X.rows() != y.size()) {
    throw DimensionError("covariate matrix has " + std::to_string(X.rows()) +
                         " rows but response has " + std::to_string(y.size()));
  }
  if (names.size() != X.cols()) {
    throw DimensionError("expected " + std::to_string(X.cols()) + " covariate names, got " +
                         std::to_string(names.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) throw DataError("duplicate covariate name '" + name + "'");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) throw DataError("non-finite response at row " + std::to_string(i));
  }
  for (std::size_t j = 0; j < X.cols(); ++j) {
    const auto c = X.col(j);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i])) {
        throw DataError("non-finite value in covariate '" + names[j] + "' at row " +
                        std::to_string(i));
      }
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.y.reserve(rows.size());
  for (auto r : rows) out.y.push_back(y[r]);
  out.X = X.select_rows(rows);
  out.names = names;
  return out;
}

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t j = 0; j < count; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace gamlssboost
