#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/dataset.hpp"
#include "gamlssboost/step_length.hpp"

namespace gamlssboost {

enum class DesignKind {
  balanced,        ///< mean and log-sd effects of similar magnitude
  large_variance,  ///< log-sd intercept 5, i.e. sd around 150
};

std::string_view to_string(DesignKind k);
DesignKind parse_design_kind(std::string_view text);

/// True linear predictors of a simulation design plus the generated values.
struct Truth {
  double intercept_mu = 0.0;
  double intercept_sigma = 0.0;
  std::vector<double> beta_mu;     ///< one per covariate, 0 for noise
  std::vector<double> beta_sigma;
  std::vector<std::size_t> informative_mu;
  std::vector<std::size_t> informative_sigma;
  std::vector<double> eta_mu;      ///< per observation
  std::vector<double> eta_sigma;
};

struct SimDesign {
  DesignKind kind = DesignKind::balanced;
  std::size_t n = 500;
  std::size_t p_ninf = 0;  ///< noise covariates appended after the informative ones
  std::uint64_t seed = 1;

  static SimDesign balanced(std::size_t n, std::size_t p_ninf, std::uint64_t seed) {
    return {DesignKind::balanced, n, p_ninf, seed};
  }
  /// The large-variance study uses two noise covariates.
  static SimDesign large_variance(std::size_t n, std::uint64_t seed, std::size_t p_ninf = 2) {
    return {DesignKind::large_variance, n, p_ninf, seed};
  }

  std::size_t num_informative() const;
  std::size_t num_covariates() const { return num_informative() + p_ninf; }

  /// Coefficients and informative sets (eta vectors left empty).
  Truth truth_coefficients() const;
};

struct SimulatedData {
  Dataset data;
  Truth truth;
};

/// Covariates iid Uniform(-1, 1), y ~ N(eta_mu, exp(eta_sigma)). Deterministic
/// in design.seed. Throws UsageError when n < 10.
SimulatedData generate(const SimDesign& design);

struct SimMetrics {
  double mse_mu = 0.0;         ///< mean squared error of eta_mu
  double mse_sigma = 0.0;      ///< mean squared error of eta_sigma (log scale)
  double in_sample_mse = 0.0;  ///< mean (y - mu_hat)^2
  std::size_t fp_mu = 0;
  std::size_t fp_sigma = 0;
  std::size_t fn_mu = 0;
  std::size_t fn_sigma = 0;
  double p_m_mu = 0.0;  ///< share of updates spent on mu (0 when nothing was fitted)
  std::size_t m_stop_used = 0;
};

/// Field names of SimMetrics, in declaration order.
const std::vector<std::string>& sim_metric_names();

/// A covariate counts as selected when its accumulated slope is non-zero.
SimMetrics evaluate(const BoostModel& model, const Truth& truth, const Dataset& data);

struct CvSettings {
  std::size_t folds = 10;
  std::size_t m_max = 1000;
  std::map<StepKind, std::size_t> m_max_for;  ///< per-policy overrides

  std::size_t m_max_of(StepKind kind) const {
    const auto it = m_max_for.find(kind);
    return it == m_max_for.end() ? m_max : it->second;
  }
};

struct StudyRow {
  std::size_t run = 0;
  StepKind policy = StepKind::saasl;
  std::uint64_t data_seed = 0;
  bool ok = true;
  std::string error;  ///< set when ok == false
  SimMetrics metrics;
  /// Not part of the emitted table: largest single-step increase of the
  /// training risk over the final fit and all CV fold fits.
  double max_risk_increase = 0.0;
};

/// B replicates of `design` (seeds derived from design.seed). Every policy is
/// cross-validated with the same fold split, refitted on the full replicate at
/// the chosen stopping iteration and evaluated. Failures become flagged rows.
/// Rows are ordered by (run, policy order).
std::vector<StudyRow> run_study(const SimDesign& design, const std::vector<StepPolicy>& policies,
                                std::size_t B, const CvSettings& cv);

}  // namespace gamlssboost
