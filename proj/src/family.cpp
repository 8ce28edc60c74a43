#include "gamlssboost/family.hpp"

#include <cmath>
#include <string>

#include "gamlssboost/error.hpp"

namespace gamlssboost {

namespace detail {

double clamp_eta_sigma(double eta_sigma, std::size_t index, EvalDiagnostics* diag) {
  if (!std::isfinite(eta_sigma)) throw NumericError("non-finite eta_sigma", index);
  if (eta_sigma > kEtaSigmaClamp || eta_sigma < -kEtaSigmaClamp) {
    if (diag != nullptr) ++diag->clamped;
    return eta_sigma > 0 ? kEtaSigmaClamp : -kEtaSigmaClamp;
  }
  return eta_sigma;
}

}  // namespace detail

namespace {

void check_lengths(std::span<const double> y, const PredictorPair& p) {
  if (p.eta_mu.size() != y.size() || p.eta_sigma.size() != y.size()) {
    throw DimensionError("response has length " + std::to_string(y.size()) +
                         " but predictors have lengths " + std::to_string(p.eta_mu.size()) +
                         "/" + std::to_string(p.eta_sigma.size()));
  }
}

// Squared standardized residual (y - eta_mu)^2 * exp(-2 eta_sigma).
double scaled_sq_residual(double y, double eta_mu, double eta_sigma, std::size_t i,
                          EvalDiagnostics* diag) {
  const double s = detail::clamp_eta_sigma(eta_sigma, i, diag);
  const double r = y - eta_mu;
  const double v = r * r * std::exp(-2.0 * s);
  if (!std::isfinite(v)) throw NumericError("non-finite scaled residual", i);
  return v;
}

}  // namespace

double GaussianLocScale::pointwise_loss(double y, double eta_mu, double eta_sigma) {
  return kHalfLogTwoPi + eta_sigma + 0.5 * scaled_sq_residual(y, eta_mu, eta_sigma, 0, nullptr);
}

double GaussianLocScale::loss(std::span<const double> y, const PredictorPair& p,
                              EvalDiagnostics* diag) {
  check_lengths(y, p);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = detail::clamp_eta_sigma(p.eta_sigma[i], i, diag);
    total += kHalfLogTwoPi + s + 0.5 * scaled_sq_residual(y[i], p.eta_mu[i], s, i, diag);
  }
  if (!std::isfinite(total)) throw NumericError("non-finite total loss");
  return total;
}

std::vector<double> GaussianLocScale::grad_mu(std::span<const double> y, const PredictorPair& p,
                                              EvalDiagnostics* diag) {
  check_lengths(y, p);
  std::vector<double> u(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = detail::clamp_eta_sigma(p.eta_sigma[i], i, diag);
    u[i] = (y[i] - p.eta_mu[i]) * std::exp(-2.0 * s);
    if (!std::isfinite(u[i])) throw NumericError("non-finite mu gradient", i);
  }
  return u;
}

std::vector<double> GaussianLocScale::grad_sigma(std::span<const double> y,
                                                 const PredictorPair& p, EvalDiagnostics* diag) {
  check_lengths(y, p);
  std::vector<double> u(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    u[i] = -1.0 + scaled_sq_residual(y[i], p.eta_mu[i], p.eta_sigma[i], i, diag);
  }
  return u;
}

std::vector<double> GaussianLocScale::variance(std::span<const double> eta_sigma,
                                               EvalDiagnostics* diag) {
  std::vector<double> v(eta_sigma.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::exp(2.0 * detail::clamp_eta_sigma(eta_sigma[i], i, diag));
  }
  return v;
}

}  // namespace gamlssboost
