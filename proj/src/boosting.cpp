#include "gamlssboost/boosting.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "gamlssboost/base_learner.hpp"
#include "gamlssboost/error.hpp"
#include "predictor_state.hpp"

namespace gamlssboost {

std::string_view to_string(FitStatus s) {
  return s == FitStatus::completed ? "completed" : "early_stop";
}

std::size_t BoostModel::updates(Parameter p) const {
  std::size_t count = 0;
  for (const auto& rec : trace) count += rec.k_star == p ? 1 : 0;
  return count;
}

std::pair<double, double> init_offsets(std::span<const double> y) {
  if (y.size() < 2) throw DataError("offsets need at least 2 observations");
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  if (!(ss > 0.0)) throw DataError("response has zero variance");
  return {mean, std::log(std::sqrt(ss / n))};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Candidate {
  Parameter parameter;
  LearnerFit fit;
  StepResult step;
  double loss = 0.0;
  // Only for sigma: the candidate eta_sigma and its caches.
  std::vector<double> eta_sigma;
  std::vector<double> clamped;
  std::vector<double> inv_var;
};

double sum_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

class Booster {
public:
  Booster(const Dataset& data, const StepPolicy& policy, BoostMode mode,
          const BoostOptions& options)
      : data_(data), policy_(policy), options_(options), bank_(data.X),
        state_(data.y, 0.0, 0.0, &diag_) {
    data.validate();
    policy.validate();
    const auto [mu0, sigma0] = init_offsets(data.y);
    state_ = detail::PredictorState(data.y, mu0, sigma0, &diag_);
    model_.offset_mu = mu0;
    model_.offset_sigma = sigma0;
    model_.coef_mu.assign(data.num_covariates(), {});
    model_.coef_sigma.assign(data.num_covariates(), {});
    model_.policy = policy;
    model_.mode = mode;
    model_.names = data.names;
    risk_ = state_.risk();
  }

  std::optional<Candidate> propose_mu() {
    const auto y = state_.y();
    const auto& eta = state_.eta();
    const auto w = state_.inv_var();
    const std::size_t n = y.size();
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (y[i] - eta.eta_mu[i]) * w[i];

    Candidate c{Parameter::mu, bank_.select_best(u), {}, 0.0, {}, {}, {}};
    const auto& h = c.fit.fitted;
    if (sum_sq(h) == 0.0) return std::nullopt;

    // Risk change along nu is the exact quadratic 0.5 nu^2 A - nu B.
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a += w[i] * h[i] * h[i];
      b += w[i] * (y[i] - eta.eta_mu[i]) * h[i];
    }
    auto along = [a, b](double nu) { return 0.5 * nu * nu * a - nu * b; };
    std::optional<std::vector<double>> variance;
    if (policy_.kind == StepKind::saasl || policy_.kind == StepKind::saasl05) {
      variance = state_.variance();
    }
    c.step = variance ? step_for(Parameter::mu, policy_, along, h, std::span<const double>(*variance))
                      : step_for(Parameter::mu, policy_, along, h);

    const double c0 = c.step.nu * c.fit.b0;
    const double c1 = c.step.nu * c.fit.b1;
    const auto x = data_.X.col(c.fit.j);
    std::vector<double> eta_mu(eta.eta_mu);
    for (std::size_t i = 0; i < n; ++i) eta_mu[i] += c0 + c1 * x[i];
    c.loss = detail::risk_terms(y, eta_mu, state_.clamped_sigma(), w);
    return c;
  }

  std::optional<Candidate> propose_sigma() {
    const auto y = state_.y();
    const auto& eta = state_.eta();
    const auto w = state_.inv_var();
    const std::size_t n = y.size();
    std::vector<double> scaled(n);  // (y - mu)^2 / sigma^2 = u_sigma + 1
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - eta.eta_mu[i];
      scaled[i] = r * r * w[i];
      u[i] = -1.0 + scaled[i];
    }

    Candidate c{Parameter::sigma, bank_.select_best(u), {}, 0.0, {}, {}, {}};
    const auto& h = c.fit.fitted;
    if (sum_sq(h) == 0.0) return std::nullopt;

    const double h_sum = std::accumulate(h.begin(), h.end(), 0.0);
    auto along = [&](double nu) {
      double total = nu * h_sum;
      for (std::size_t i = 0; i < n; ++i) total += 0.5 * scaled[i] * std::expm1(-2.0 * nu * h[i]);
      return total;
    };
    c.step = step_for(Parameter::sigma, policy_, along, h);

    const double c0 = c.step.nu * c.fit.b0;
    const double c1 = c.step.nu * c.fit.b1;
    const auto x = data_.X.col(c.fit.j);
    c.eta_sigma = eta.eta_sigma;
    for (std::size_t i = 0; i < n; ++i) c.eta_sigma[i] += c0 + c1 * x[i];
    state_.sigma_caches(c.eta_sigma, c.clamped, c.inv_var);
    c.loss = detail::risk_terms(y, eta.eta_mu, c.clamped, c.inv_var);
    return c;
  }

  void accept(std::size_t m, Candidate& c, double rho_mu, double rho_sigma) {
    TraceRecord rec;
    rec.m = m;
    rec.k_star = c.parameter;
    rec.j_star = c.fit.j;
    rec.nu_star = c.step.nu_star;
    rec.nu = c.step.nu;
    rec.delta_rho_mu = rho_mu;
    rec.delta_rho_sigma = rho_sigma;
    rec.boundary_hit = c.step.boundary_hit;
    rec.intercept_step = c.step.nu * c.fit.b0;
    rec.slope_step = c.step.nu * c.fit.b1;

    auto& term = (c.parameter == Parameter::mu ? model_.coef_mu : model_.coef_sigma)[c.fit.j];
    term.intercept += rec.intercept_step;
    term.slope += rec.slope_step;

    if (c.parameter == Parameter::mu) {
      state_.add_mu(data_.X.col(c.fit.j), rec.intercept_step, rec.slope_step);
    } else {
      state_.swap_sigma(c.eta_sigma, c.clamped, c.inv_var);
    }
    risk_ = c.loss;
    rec.risk_after = risk_;

    if (rec.boundary_hit) note_boundary(c.parameter, m, rec.nu_star);
    model_.trace.push_back(rec);
  }

  // Wraps numeric failures with the iteration number.
  template <typename F>
  auto at_iteration(std::size_t m, F&& f) {
    try {
      return f();
    } catch (const NumericError& e) {
      throw NumericError("boosting iteration " + std::to_string(m) + ": " + e.what());
    }
  }

  BoostModel finish() {
    model_.m_done = model_.trace.size();
    model_.clamp_events = diag_.clamped;
    if (diag_.clamped > 0 && options_.on_warning) {
      options_.on_warning("eta_sigma was clamped to +/-" + std::to_string(kEtaSigmaClamp) + " " +
                          std::to_string(diag_.clamped) + " times");
    }
    return std::move(model_);
  }

  BoostModel& model() { return model_; }

private:
  void note_boundary(Parameter p, std::size_t m, double nu_star) {
    auto& count = p == Parameter::mu ? model_.boundary_hits_mu : model_.boundary_hits_sigma;
    if (count++ == 0 && options_.on_warning) {
      const auto& iv = p == Parameter::mu ? policy_.interval_mu : policy_.interval_sigma;
      options_.on_warning("iteration " + std::to_string(m) + ": optimal step-length for " +
                          std::string(to_string(p)) + " (" + std::to_string(nu_star) +
                          ") is at the edge of the search interval [" + std::to_string(iv.lo) +
                          ", " + std::to_string(iv.hi) + "]; consider widening it");
    }
  }

  const Dataset& data_;
  StepPolicy policy_;
  BoostOptions options_;
  LinearLearnerBank bank_;
  EvalDiagnostics diag_;
  detail::PredictorState state_;
  BoostModel model_;
  double risk_ = 0.0;
};

}  // namespace

BoostModel boost_noncyclical(const Dataset& data, const StepPolicy& policy, std::size_t m_stop,
                             const BoostOptions& options) {
  Booster booster(data, policy, BoostMode::noncyclical, options);
  for (std::size_t m = 1; m <= m_stop; ++m) {
    auto mu = booster.at_iteration(m, [&] { return booster.propose_mu(); });
    auto sigma = booster.at_iteration(m, [&] { return booster.propose_sigma(); });
    if (!mu && !sigma) {
      booster.model().status = FitStatus::early_stop;
      break;
    }
    const double rho_mu = mu ? mu->loss : kNaN;
    const double rho_sigma = sigma ? sigma->loss : kNaN;
    if (mu && (!sigma || mu->loss <= sigma->loss)) {
      booster.accept(m, *mu, rho_mu, rho_sigma);
    } else {
      booster.accept(m, *sigma, rho_mu, rho_sigma);
    }
  }
  return booster.finish();
}

BoostModel boost_cyclical(const Dataset& data, const StepPolicy& policy, std::size_t m_stop_mu,
                          std::size_t m_stop_sigma, const BoostOptions& options) {
  Booster booster(data, policy, BoostMode::cyclical, options);
  const std::size_t m_stop = std::max(m_stop_mu, m_stop_sigma);
  for (std::size_t m = 1; m <= m_stop; ++m) {
    bool any = false;
    if (m <= m_stop_mu) {
      if (auto mu = booster.at_iteration(m, [&] { return booster.propose_mu(); })) {
        booster.accept(m, *mu, mu->loss, kNaN);
        any = true;
      }
    }
    if (m <= m_stop_sigma) {
      if (auto sigma = booster.at_iteration(m, [&] { return booster.propose_sigma(); })) {
        booster.accept(m, *sigma, kNaN, sigma->loss);
        any = true;
      }
    }
    if (!any) {
      booster.model().status = FitStatus::early_stop;
      break;
    }
  }
  return booster.finish();
}

PredictorPair coefficient_predictors(const BoostModel& model, const Matrix& Xnew) {
  if (Xnew.cols() != model.num_covariates()) {
    throw DimensionError("model has " + std::to_string(model.num_covariates()) +
                         " covariates but new data has " + std::to_string(Xnew.cols()));
  }
  double mu0 = model.offset_mu;
  double sigma0 = model.offset_sigma;
  for (std::size_t j = 0; j < model.num_covariates(); ++j) {
    mu0 += model.coef_mu[j].intercept;
    sigma0 += model.coef_sigma[j].intercept;
  }
  PredictorPair eta(Xnew.rows(), mu0, sigma0);
  for (std::size_t j = 0; j < model.num_covariates(); ++j) {
    const auto x = Xnew.col(j);
    for (std::size_t i = 0; i < Xnew.rows(); ++i) {
      eta.eta_mu[i] += model.coef_mu[j].slope * x[i];
      eta.eta_sigma[i] += model.coef_sigma[j].slope * x[i];
    }
  }
  return eta;
}

Prediction predict(const BoostModel& model, const Matrix& Xnew) {
  auto eta = coefficient_predictors(model, Xnew);
  Prediction out{std::move(eta.eta_mu), std::move(eta.eta_sigma)};
  for (auto& s : out.sigma) s = std::exp(s);
  return out;
}

PredictorPair replay_predictors(const BoostModel& model, const Matrix& X, std::size_t m) {
  if (X.cols() != model.num_covariates()) {
    throw DimensionError("model has " + std::to_string(model.num_covariates()) +
                         " covariates but data has " + std::to_string(X.cols()));
  }
  PredictorPair p(X.rows(), model.offset_mu, model.offset_sigma);
  const std::size_t upto = std::min(m, model.trace.size());
  for (std::size_t t = 0; t < upto; ++t) {
    const auto& rec = model.trace[t];
    auto& eta = rec.k_star == Parameter::mu ? p.eta_mu : p.eta_sigma;
    const auto x = X.col(rec.j_star);
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] += rec.intercept_step + rec.slope_step * x[i];
  }
  return p;
}

std::vector<double> risk_path(const BoostModel& model, const Dataset& data) {
  if (data.X.cols() != model.num_covariates()) {
    throw DimensionError("model has " + std::to_string(model.num_covariates()) +
                         " covariates but data has " + std::to_string(data.X.cols()));
  }
  detail::PredictorState state(data.y, model.offset_mu, model.offset_sigma, nullptr);
  std::vector<double> path;
  path.reserve(model.trace.size() + 1);
  path.push_back(state.risk());
  for (const auto& rec : model.trace) {
    state.apply(rec, data.X);
    path.push_back(state.risk());
  }
  return path;
}

}  // namespace gamlssboost
