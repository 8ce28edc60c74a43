#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gamlssboost {

enum class Parameter { mu, sigma };

std::string_view to_string(Parameter p);

enum class StepKind {
  fsl,      ///< fixed step-length nu0
  asl,      ///< line-searched optimal step for both parameters
  saasl,    ///< closed-form step for mu, line search for sigma
  saasl05,  ///< closed-form step for mu, optimal sigma step fixed at 0.5
};

std::string_view to_string(StepKind k);
/// Parses "fsl", "asl", "saasl" or "saasl05" (case-insensitive).
StepKind parse_step_kind(std::string_view text);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Parses "LO:HI".
Interval parse_interval(std::string_view text);

struct StepPolicy {
  StepKind kind = StepKind::saasl;
  double lambda = 0.1;
  double nu0 = 0.1;
  Interval interval_mu{0.0, 10.0};
  Interval interval_sigma{0.0, 1.0};
  double tol = 1e-6;

  /// Throws UsageError unless lambda in (0,1], nu0 > 0, tol > 0 and both
  /// intervals satisfy 0 <= lo < hi.
  void validate() const;
};

struct StepResult {
  double nu_star = 0.0;  ///< optimal step-length before shrinkage (1 for FSL)
  double nu = 0.0;       ///< step-length actually applied
  bool boundary_hit = false;
};

struct LineSearchResult {
  double nu = 0.0;
  bool boundary_hit = false;
  int iterations = 0;
};

/// Closed-form minimizer of the mean-update risk along a base-learner fit h:
/// sum(h^2) / sum(h^2 / sigma2). With constant sigma2 this is sigma2 itself.
/// Throws DegenerateLearnerError if sum(h^2) == 0 and NumericError on a
/// nonpositive variance.
double analytic_nu_mu(std::span<const double> h, std::span<const double> sigma_sq_prev);

/// Golden-section minimization of a unimodal phi on [lo, hi] to absolute
/// tolerance tol, capped at 200 iterations. boundary_hit is set when the
/// result lies within tol of an endpoint.
LineSearchResult line_search(const std::function<double(double)>& phi, Interval interval,
                             double tol);

/// Derivative of the scale-update risk along h at step nu, written in terms
/// of the residuals eps of regressing the sigma gradient on h:
///   sum h_i - sum (h_i + eps_i + 1) h_i exp(-2 nu h_i).
/// Zero at the optimal sigma step.
double nu_sigma_foc_residual(double nu, std::span<const double> h, std::span<const double> eps);

/// Step-length for one parameter's candidate update under `policy`.
/// `risk_along_nu` evaluates the outer loss (or any shift of it) after a step
/// nu along h; it is only called by line-searching kinds. SAASL and SAASL05
/// need `sigma_sq_prev` for the mean parameter.
StepResult step_for(Parameter parameter, const StepPolicy& policy,
                    const std::function<double(double)>& risk_along_nu,
                    std::span<const double> h,
                    std::optional<std::span<const double>> sigma_sq_prev = std::nullopt);

}  // namespace gamlssboost
