#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gamlssboost/dataset.hpp"
#include "gamlssboost/family.hpp"
#include "gamlssboost/step_length.hpp"

namespace gamlssboost {

/// Accumulated contribution of one covariate's base-learners to a predictor.
struct LinearTerm {
  double intercept = 0.0;
  double slope = 0.0;
};

/// One accepted update.
struct TraceRecord {
  std::size_t m = 0;  ///< boosting iteration (1-based)
  Parameter k_star = Parameter::mu;
  std::size_t j_star = 0;
  double nu_star = 0.0;
  double nu = 0.0;
  /// Outer loss of each parameter's candidate update; NaN when a parameter
  /// had no candidate (degenerate fit or cyclical sub-update).
  double delta_rho_mu = 0.0;
  double delta_rho_sigma = 0.0;
  double risk_after = 0.0;
  bool boundary_hit = false;
  /// Applied increments nu * b0 and nu * b1.
  double intercept_step = 0.0;
  double slope_step = 0.0;
};

enum class BoostMode { noncyclical, cyclical };
enum class FitStatus {
  completed,
  early_stop,  ///< every candidate in some iteration was degenerate
};

std::string_view to_string(FitStatus s);

struct BoostModel {
  double offset_mu = 0.0;
  double offset_sigma = 0.0;
  std::vector<LinearTerm> coef_mu;
  std::vector<LinearTerm> coef_sigma;
  std::vector<TraceRecord> trace;
  std::size_t m_done = 0;  ///< number of accepted updates (== trace.size())
  StepPolicy policy;
  std::string family = "gaussian_loc_scale";
  BoostMode mode = BoostMode::noncyclical;
  FitStatus status = FitStatus::completed;
  std::size_t boundary_hits_mu = 0;
  std::size_t boundary_hits_sigma = 0;
  std::size_t clamp_events = 0;
  std::vector<std::string> names;

  std::size_t num_covariates() const noexcept { return coef_mu.size(); }
  std::size_t updates(Parameter p) const;
};

/// Receives human-readable warnings (line-search boundary hits, clamping).
using WarningSink = std::function<void(const std::string&)>;

struct BoostOptions {
  WarningSink on_warning;
};

/// Gaussian MLE offsets: (mean(y), log of the MLE standard deviation).
/// Throws DataError if n < 2 or the response has zero variance.
std::pair<double, double> init_offsets(std::span<const double> y);

/// Non-cyclical boosting: per iteration both parameters propose an update and
/// only the one with the lower resulting outer loss is applied (mu on ties).
BoostModel boost_noncyclical(const Dataset& data, const StepPolicy& policy, std::size_t m_stop,
                             const BoostOptions& options = {});

/// Cyclical boosting: per iteration mu is updated, then sigma using the new mu,
/// each only while the iteration count is within its own stopping value.
BoostModel boost_cyclical(const Dataset& data, const StepPolicy& policy, std::size_t m_stop_mu,
                          std::size_t m_stop_sigma, const BoostOptions& options = {});

struct Prediction {
  std::vector<double> mu;
  std::vector<double> sigma;
};

/// Additive predictors from the accumulated coefficients.
PredictorPair coefficient_predictors(const BoostModel& model, const Matrix& Xnew);

/// Distribution parameters (identity and exp inverse links) from the
/// accumulated coefficients.
Prediction predict(const BoostModel& model, const Matrix& Xnew);

/// Additive predictors after replaying the first `m` updates (all when m is
/// larger than m_done). Replay reproduces the fitting arithmetic exactly.
PredictorPair replay_predictors(const BoostModel& model, const Matrix& X,
                                std::size_t m = static_cast<std::size_t>(-1));

/// Empirical risk of the model truncated to 0..m_done updates.
std::vector<double> risk_path(const BoostModel& model, const Dataset& data);

}  // namespace gamlssboost
