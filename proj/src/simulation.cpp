#include "gamlssboost/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gamlssboost/cross_validation.hpp"
#include "gamlssboost/error.hpp"
#include "gamlssboost/parallel.hpp"
#include "gamlssboost/random.hpp"

namespace gamlssboost {

std::string_view to_string(DesignKind k) {
  return k == DesignKind::balanced ? "balanced" : "large_variance";
}

DesignKind parse_design_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "balanced") return DesignKind::balanced;
  if (lower == "large_variance" || lower == "large-variance") return DesignKind::large_variance;
  throw UsageError("unknown design '" + std::string(text) +
                   "' (expected balanced or large_variance)");
}

std::size_t SimDesign::num_informative() const {
  return kind == DesignKind::balanced ? 6 : 3;
}

Truth SimDesign::truth_coefficients() const {
  Truth t;
  const std::size_t J = num_covariates();
  t.beta_mu.assign(J, 0.0);
  t.beta_sigma.assign(J, 0.0);
  if (kind == DesignKind::balanced) {
    const double mu[] = {1.0, 2.0, 0.5, -1.0, 0.0, 0.0};
    const double sigma[] = {0.0, 0.0, 0.5, 0.25, -0.25, -0.5};
    std::copy(std::begin(mu), std::end(mu), t.beta_mu.begin());
    std::copy(std::begin(sigma), std::end(sigma), t.beta_sigma.begin());
  } else {
    t.intercept_mu = 1.0;
    t.intercept_sigma = 5.0;
    const double mu[] = {1.0, 2.0, -1.0};
    const double sigma[] = {0.1, -0.2, 0.1};
    std::copy(std::begin(mu), std::end(mu), t.beta_mu.begin());
    std::copy(std::begin(sigma), std::end(sigma), t.beta_sigma.begin());
  }
  for (std::size_t j = 0; j < J; ++j) {
    if (t.beta_mu[j] != 0.0) t.informative_mu.push_back(j);
    if (t.beta_sigma[j] != 0.0) t.informative_sigma.push_back(j);
  }
  return t;
}

SimulatedData generate(const SimDesign& design) {
  if (design.n < 10) throw UsageError("simulation needs n >= 10");
  SimulatedData out;
  out.truth = design.truth_coefficients();
  const std::size_t n = design.n;
  const std::size_t J = design.num_covariates();

  Rng rng(design.seed);
  out.data.X = Matrix(n, J);
  for (std::size_t j = 0; j < J; ++j) {
    for (auto& v : out.data.X.col(j)) v = rng.uniform(-1.0, 1.0);
  }
  out.data.names = default_names(J);

  auto& t = out.truth;
  t.eta_mu.assign(n, t.intercept_mu);
  t.eta_sigma.assign(n, t.intercept_sigma);
  for (std::size_t j = 0; j < J; ++j) {
    const auto x = out.data.X.col(j);
    for (std::size_t i = 0; i < n; ++i) {
      t.eta_mu[i] += t.beta_mu[j] * x[i];
      t.eta_sigma[i] += t.beta_sigma[j] * x[i];
    }
  }
  out.data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.data.y[i] = t.eta_mu[i] + std::exp(t.eta_sigma[i]) * rng.normal();
  }
  return out;
}

const std::vector<std::string>& sim_metric_names() {
  static const std::vector<std::string> names = {
      "mse_mu", "mse_sigma", "in_sample_mse", "fp_mu",   "fp_sigma",
      "fn_mu",  "fn_sigma",  "p_m_mu",        "m_stop_used"};
  return names;
}

namespace {

void count_selection(const std::vector<LinearTerm>& coef, const std::vector<std::size_t>& informative,
                     std::size_t& fp, std::size_t& fn) {
  fp = 0;
  fn = 0;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    const bool selected = coef[j].slope != 0.0;
    const bool relevant = std::find(informative.begin(), informative.end(), j) != informative.end();
    if (selected && !relevant) ++fp;
    if (!selected && relevant) ++fn;
  }
}

}  // namespace

SimMetrics evaluate(const BoostModel& model, const Truth& truth, const Dataset& data) {
  if (truth.beta_mu.size() != model.num_covariates() || truth.eta_mu.size() != data.n()) {
    throw DimensionError("model, truth and data shapes disagree");
  }
  const auto eta = coefficient_predictors(model, data.X);
  const double n = static_cast<double>(data.n());
  SimMetrics m;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double dm = truth.eta_mu[i] - eta.eta_mu[i];
    const double ds = truth.eta_sigma[i] - eta.eta_sigma[i];
    const double r = data.y[i] - eta.eta_mu[i];
    m.mse_mu += dm * dm;
    m.mse_sigma += ds * ds;
    m.in_sample_mse += r * r;
  }
  m.mse_mu /= n;
  m.mse_sigma /= n;
  m.in_sample_mse /= n;
  count_selection(model.coef_mu, truth.informative_mu, m.fp_mu, m.fn_mu);
  count_selection(model.coef_sigma, truth.informative_sigma, m.fp_sigma, m.fn_sigma);
  m.m_stop_used = model.m_done;
  m.p_m_mu = model.m_done == 0 ? 0.0
                               : static_cast<double>(model.updates(Parameter::mu)) /
                                     static_cast<double>(model.m_done);
  return m;
}

std::vector<StudyRow> run_study(const SimDesign& design, const std::vector<StepPolicy>& policies,
                                std::size_t B, const CvSettings& cv) {
  if (B < 1) throw UsageError("a study needs at least one run");
  if (policies.empty()) throw UsageError("a study needs at least one policy");
  for (const auto& p : policies) p.validate();

  const std::size_t P = policies.size();
  std::vector<StudyRow> rows(B * P);
  std::vector<SimulatedData> replicates(B);
  for (std::size_t b = 0; b < B; ++b) {
    SimDesign d = design;
    d.seed = mix_seed(design.seed, b);
    replicates[b] = generate(d);
    for (std::size_t p = 0; p < P; ++p) {
      rows[b * P + p].run = b;
      rows[b * P + p].policy = policies[p].kind;
      rows[b * P + p].data_seed = d.seed;
    }
  }

  parallel_for(B * P, [&](std::size_t task) {
    const std::size_t b = task / P;
    const auto& policy = policies[task % P];
    auto& row = rows[task];
    const auto& rep = replicates[b];
    try {
      const auto cv_result = kfold_cv(rep.data, policy, cv.m_max_of(policy.kind), cv.folds,
                                      mix_seed(row.data_seed, 0xC0FFEE));
      const auto model = boost_noncyclical(rep.data, policy, cv_result.m_best);
      row.metrics = evaluate(model, rep.truth, rep.data);
      const auto path = gamlssboost::risk_path(model, rep.data);
      double worst = cv_result.max_train_risk_increase;
      for (std::size_t m = 1; m < path.size(); ++m) worst = std::max(worst, path[m] - path[m - 1]);
      row.max_risk_increase = worst;
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace gamlssboost
