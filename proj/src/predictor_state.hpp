#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/family.hpp"

namespace gamlssboost::detail {

// Additive predictors plus cached exp(2 eta_sigma) and its reciprocal, kept
// in sync with eta_sigma. Risk uses the same arithmetic as
// GaussianLocScale::loss so both agree bitwise.
class PredictorState {
public:
  PredictorState(std::span<const double> y, double offset_mu, double offset_sigma,
                 EvalDiagnostics* diag);

  void add_mu(std::span<const double> x, double c0, double c1);
  void add_sigma(std::span<const double> x, double c0, double c1);
  void apply(const TraceRecord& rec, const Matrix& X);

  // Replaces eta_sigma and its caches with precomputed values.
  void swap_sigma(std::vector<double>& eta_sigma, std::vector<double>& clamped,
                  std::vector<double>& inv_var);

  double risk() const;

  std::span<const double> y() const { return y_; }
  const PredictorPair& eta() const { return eta_; }
  std::span<const double> clamped_sigma() const { return clamped_; }
  std::span<const double> inv_var() const { return inv_var_; }
  std::vector<double> variance() const;

  // Fills clamped/inv_var for a candidate eta_sigma.
  void sigma_caches(std::span<const double> eta_sigma, std::vector<double>& clamped,
                    std::vector<double>& inv_var) const;

private:
  void refresh_sigma();

  std::span<const double> y_;
  PredictorPair eta_;
  std::vector<double> clamped_;
  std::vector<double> inv_var_;
  EvalDiagnostics* diag_;
};

// sum_i [ c + s_i + 0.5 * (y_i - m_i)^2 * w_i ]
double risk_terms(std::span<const double> y, std::span<const double> eta_mu,
                  std::span<const double> clamped_sigma, std::span<const double> inv_var);

}  // namespace gamlssboost::detail
