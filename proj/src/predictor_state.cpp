#include "predictor_state.hpp"

#include <cmath>

#include "gamlssboost/error.hpp"

namespace gamlssboost::detail {

double risk_terms(std::span<const double> y, std::span<const double> eta_mu,
                  std::span<const double> clamped_sigma, std::span<const double> inv_var) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - eta_mu[i];
    const double v = r * r * inv_var[i];
    if (!std::isfinite(v)) throw NumericError("non-finite scaled residual", i);
    total += kHalfLogTwoPi + clamped_sigma[i] + 0.5 * v;
  }
  if (!std::isfinite(total)) throw NumericError("non-finite total loss");
  return total;
}

PredictorState::PredictorState(std::span<const double> y, double offset_mu, double offset_sigma,
                               EvalDiagnostics* diag)
    : y_(y), eta_(y.size(), offset_mu, offset_sigma), diag_(diag) {
  refresh_sigma();
}

void PredictorState::add_mu(std::span<const double> x, double c0, double c1) {
  for (std::size_t i = 0; i < eta_.eta_mu.size(); ++i) eta_.eta_mu[i] += c0 + c1 * x[i];
}

void PredictorState::add_sigma(std::span<const double> x, double c0, double c1) {
  for (std::size_t i = 0; i < eta_.eta_sigma.size(); ++i) eta_.eta_sigma[i] += c0 + c1 * x[i];
  refresh_sigma();
}

void PredictorState::apply(const TraceRecord& rec, const Matrix& X) {
  if (rec.k_star == Parameter::mu) {
    add_mu(X.col(rec.j_star), rec.intercept_step, rec.slope_step);
  } else {
    add_sigma(X.col(rec.j_star), rec.intercept_step, rec.slope_step);
  }
}

void PredictorState::swap_sigma(std::vector<double>& eta_sigma, std::vector<double>& clamped,
                                std::vector<double>& inv_var) {
  eta_.eta_sigma.swap(eta_sigma);
  clamped_.swap(clamped);
  inv_var_.swap(inv_var);
}

double PredictorState::risk() const { return risk_terms(y_, eta_.eta_mu, clamped_, inv_var_); }

std::vector<double> PredictorState::variance() const {
  std::vector<double> v(inv_var_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / inv_var_[i];
  return v;
}

void PredictorState::sigma_caches(std::span<const double> eta_sigma,
                                  std::vector<double>& clamped,
                                  std::vector<double>& inv_var) const {
  clamped.resize(eta_sigma.size());
  inv_var.resize(eta_sigma.size());
  for (std::size_t i = 0; i < eta_sigma.size(); ++i) {
    clamped[i] = clamp_eta_sigma(eta_sigma[i], i, diag_);
    inv_var[i] = std::exp(-2.0 * clamped[i]);
  }
}

void PredictorState::refresh_sigma() { sigma_caches(eta_.eta_sigma, clamped_, inv_var_); }

}  // namespace gamlssboost::detail
