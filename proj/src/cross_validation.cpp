#include "gamlssboost/cross_validation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gamlssboost/error.hpp"
#include "gamlssboost/parallel.hpp"
#include "gamlssboost/random.hpp"
#include "predictor_state.hpp"

namespace gamlssboost {

std::vector<std::size_t> assign_folds(std::size_t n, std::size_t K, std::uint64_t seed) {
  if (K < 2 || K > n) {
    throw UsageError("number of folds must satisfy 2 <= K <= n (K = " + std::to_string(K) +
                     ", n = " + std::to_string(n) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto k = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(order[i], order[k]);
  }
  std::vector<std::size_t> folds(n);
  for (std::size_t pos = 0; pos < n; ++pos) folds[order[pos]] = pos % K;
  return folds;
}

double max_risk_increase(const BoostModel& model, const Dataset& train) {
  double prev = detail::PredictorState(train.y, model.offset_mu, model.offset_sigma, nullptr).risk();
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& rec : model.trace) {
    worst = std::max(worst, rec.risk_after - prev);
    prev = rec.risk_after;
  }
  return worst;
}

CvResult kfold_cv(const Dataset& data, const StepPolicy& policy, std::size_t m_max,
                  std::size_t K, std::uint64_t seed) {
  data.validate();
  policy.validate();
  if (m_max < 1) throw UsageError("m_max must be at least 1");

  CvResult result;
  result.seed = seed;
  result.fold_assignment = assign_folds(data.n(), K, seed);

  std::vector<std::vector<std::size_t>> train(K), test(K);
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      (result.fold_assignment[i] == k ? test[k] : train[k]).push_back(i);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (test[k].size() < 2 || train[k].size() < 2) {
      throw UsageError("fold " + std::to_string(k) + " has fewer than 2 observations");
    }
  }

  std::vector<std::vector<double>> fold_paths(K);
  std::vector<char> stopped(K, 0);
  std::vector<double> increase(K, 0.0);
  parallel_for(K, [&](std::size_t k) {
    const Dataset train_data = data.subset(train[k]);
    const Dataset test_data = data.subset(test[k]);
    const BoostModel model = boost_noncyclical(train_data, policy, m_max);
    stopped[k] = model.status == FitStatus::early_stop;
    increase[k] = max_risk_increase(model, train_data);

    detail::PredictorState state(test_data.y, model.offset_mu, model.offset_sigma, nullptr);
    const double scale = 1.0 / static_cast<double>(test_data.n());
    auto& path = fold_paths[k];
    path.reserve(m_max + 1);
    path.push_back(state.risk() * scale);
    for (const auto& rec : model.trace) {
      state.apply(rec, test_data.X);
      path.push_back(state.risk() * scale);
    }
    path.resize(m_max + 1, path.back());
  });

  result.mean_risk.assign(m_max + 1, 0.0);
  result.max_train_risk_increase = *std::max_element(increase.begin(), increase.end());
  for (std::size_t k = 0; k < K; ++k) {
    result.early_stops += stopped[k] ? 1 : 0;
    for (std::size_t m = 0; m <= m_max; ++m) result.mean_risk[m] += fold_paths[k][m];
  }
  for (auto& r : result.mean_risk) r /= static_cast<double>(K);

  result.m_best = 0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (result.mean_risk[m] < result.mean_risk[result.m_best]) result.m_best = m;
  }
  return result;
}

}  // namespace gamlssboost
