#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gamlssboost {

/// Additive predictors of the Gaussian location-scale model: identity link
/// for the mean, log link for the standard deviation.
struct PredictorPair {
  std::vector<double> eta_mu;
  std::vector<double> eta_sigma;

  PredictorPair() = default;
  PredictorPair(std::size_t n, double mu0, double sigma0) : eta_mu(n, mu0), eta_sigma(n, sigma0) {}
  PredictorPair(std::vector<double> mu, std::vector<double> sigma)
      : eta_mu(std::move(mu)), eta_sigma(std::move(sigma)) {}

  std::size_t size() const noexcept { return eta_mu.size(); }
};

/// Counts evaluations where eta_sigma had to be clamped before exponentiation.
struct EvalDiagnostics {
  std::size_t clamped = 0;
};

/// Bound applied to eta_sigma before exp(); beyond it doubles carry no
/// meaningful information.
inline constexpr double kEtaSigmaClamp = 350.0;

/// 0.5 * log(2 * pi)
inline constexpr double kHalfLogTwoPi = 0.91893853320467274178;

/// Gaussian location-scale family (mean with identity link, sd with log link)
/// under the full negative log-likelihood.
class GaussianLocScale {
public:
  /// Negative log-density of one observation, constants included.
  static double pointwise_loss(double y, double eta_mu, double eta_sigma);

  /// Empirical risk: sum of pointwise losses.
  static double loss(std::span<const double> y, const PredictorPair& p,
                     EvalDiagnostics* diag = nullptr);

  /// Negative gradient w.r.t. eta_mu: (y - eta_mu) * exp(-2 eta_sigma).
  static std::vector<double> grad_mu(std::span<const double> y, const PredictorPair& p,
                                     EvalDiagnostics* diag = nullptr);

  /// Negative gradient w.r.t. eta_sigma: -1 + (y - eta_mu)^2 * exp(-2 eta_sigma).
  static std::vector<double> grad_sigma(std::span<const double> y, const PredictorPair& p,
                                        EvalDiagnostics* diag = nullptr);

  /// sigma^2 = exp(2 eta_sigma), elementwise.
  static std::vector<double> variance(std::span<const double> eta_sigma,
                                      EvalDiagnostics* diag = nullptr);
};

/// Free-function aliases matching the family's operations.
inline double loss(std::span<const double> y, const PredictorPair& p) {
  return GaussianLocScale::loss(y, p);
}
inline std::vector<double> grad_mu(std::span<const double> y, const PredictorPair& p) {
  return GaussianLocScale::grad_mu(y, p);
}
inline std::vector<double> grad_sigma(std::span<const double> y, const PredictorPair& p) {
  return GaussianLocScale::grad_sigma(y, p);
}

namespace detail {
/// Clamps eta_sigma into [-kEtaSigmaClamp, kEtaSigmaClamp]; throws
/// NumericError (with index) on non-finite input.
double clamp_eta_sigma(double eta_sigma, std::size_t index, EvalDiagnostics* diag);
}  // namespace detail

}  // namespace gamlssboost
