#include "gamlssboost/base_learner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gamlssboost/error.hpp"

namespace gamlssboost {

namespace {

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

LearnerFit fit_ols(std::span<const double> x, std::span<const double> u, std::size_t j) {
  if (x.size() != u.size()) {
    throw DimensionError("covariate has length " + std::to_string(x.size()) +
                         " but gradient has length " + std::to_string(u.size()));
  }
  if (x.size() < 2) throw DimensionError("least-squares fit needs at least 2 observations");

  LearnerFit fit;
  fit.j = j;
  const double u_mean = mean_of(u);
  if (is_constant(x)) {
    fit.b0 = u_mean;
    fit.b1 = 0.0;
  } else {
    const double x_mean = mean_of(x);
    double sxx = 0.0;
    double sxu = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dx = x[i] - x_mean;
      sxx += dx * dx;
      sxu += dx * u[i];
    }
    fit.b1 = sxu / sxx;
    fit.b0 = u_mean - fit.b1 * x_mean;
  }
  fit.fitted.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.fitted[i] = fit.b0 + fit.b1 * x[i];
    const double e = u[i] - fit.fitted[i];
    fit.rss += e * e;
  }
  return fit;
}

LearnerFit select_best(const Matrix& X, std::span<const double> u,
                       std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw UsageError("select_best needs at least one candidate column");
  return LinearLearnerBank(X).select_best(u, candidates);
}

LinearLearnerBank::LinearLearnerBank(const Matrix& X)
    : X_(&X), mean_(X.cols()), sxx_(X.cols()), centered_(X.rows(), X.cols()) {
  for (std::size_t j = 0; j < X.cols(); ++j) {
    const auto x = X.col(j);
    auto c = centered_.col(j);
    if (is_constant(x)) {
      mean_[j] = x.empty() ? 0.0 : x.front();
      sxx_[j] = 0.0;
      std::fill(c.begin(), c.end(), 0.0);
      continue;
    }
    mean_[j] = mean_of(x);
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      c[i] = x[i] - mean_[j];
      ss += c[i] * c[i];
    }
    sxx_[j] = ss;
  }
}

double LinearLearnerBank::rss(std::size_t j, std::span<const double> u, double /*u_mean*/,
                              double u_ss) const {
  if (sxx_[j] == 0.0) return u_ss;
  const auto c = centered_.col(j);
  double sxu = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sxu += c[i] * u[i];
  return std::max(0.0, u_ss - sxu * sxu / sxx_[j]);
}

LearnerFit LinearLearnerBank::select_best(std::span<const double> u,
                                          std::span<const std::size_t> candidates) const {
  if (u.size() != X_->rows()) {
    throw DimensionError("gradient has length " + std::to_string(u.size()) + ", expected " +
                         std::to_string(X_->rows()));
  }
  if (X_->cols() == 0) throw UsageError("no covariates to select from");
  const double u_mean = mean_of(u);
  double u_ss = 0.0;
  for (double v : u) u_ss += (v - u_mean) * (v - u_mean);

  std::size_t best = 0;
  double best_rss = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t j) {
    if (j >= X_->cols()) {
      throw UsageError("candidate column " + std::to_string(j) + " out of range");
    }
    const double r = rss(j, u, u_mean, u_ss);
    if (r < best_rss || (r == best_rss && j < best)) {
      best_rss = r;
      best = j;
    }
  };
  if (candidates.empty()) {
    for (std::size_t j = 0; j < X_->cols(); ++j) consider(j);
  } else {
    for (auto j : candidates) consider(j);
  }
  return fit_ols(X_->col(best), u, best);
}

}  // namespace gamlssboost
