#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/dataset.hpp"
#include "gamlssboost/step_length.hpp"

namespace gamlssboost {

struct CvResult {
  std::size_t m_best = 0;
  /// Entry m: average over folds of the per-observation held-out loss of the
  /// fold model truncated to m iterations.
  std::vector<double> mean_risk;
  std::vector<std::size_t> fold_assignment;  ///< fold index per observation
  std::uint64_t seed = 0;
  /// Number of folds whose fit stopped early (path held constant afterwards).
  std::size_t early_stops = 0;
  /// Largest single-step increase of the training risk seen in any fold fit
  /// (<= 0 when every fold's training risk path is non-increasing).
  double max_train_risk_increase = 0.0;
};

/// Largest increase between consecutive entries of the training risk path
/// implied by the model's trace (offset risk first); -inf for an empty trace.
double max_risk_increase(const BoostModel& model, const Dataset& train);

/// Seeded random partition of n observations into K folds whose sizes differ
/// by at most one.
std::vector<std::size_t> assign_folds(std::size_t n, std::size_t K, std::uint64_t seed);

/// K-fold cross-validation of the non-cyclical booster for the global
/// stopping iteration. Offsets are recomputed inside each training fold.
/// Folds run in parallel; results are merged in fold order.
CvResult kfold_cv(const Dataset& data, const StepPolicy& policy, std::size_t m_max,
                  std::size_t K, std::uint64_t seed);

}  // namespace gamlssboost
