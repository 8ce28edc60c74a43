#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gamlssboost/error.hpp"
#include "gamlssboost/simulation.hpp"

using namespace gamlssboost;

namespace {

BoostModel offsets_only(const Dataset& d) {
  StepPolicy p;
  return boost_noncyclical(d, p, 0);
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate(SimDesign::balanced(50, 3, 17));
  const auto b = generate(SimDesign::balanced(50, 3, 17));
  const auto c = generate(SimDesign::balanced(50, 3, 18));
  CHECK(a.data.y == b.data.y);
  CHECK(a.data.y != c.data.y);
  CHECK(a.data.num_covariates() == 9);
  CHECK(a.data.names.front() == "x1");
  CHECK(a.data.names.back() == "x9");
  CHECK_THROWS_AS(generate(SimDesign::balanced(9, 0, 1)), UsageError);
}

TEST_CASE("covariates and scales stay in range") {
  const auto bal = generate(SimDesign::balanced(2000, 2, 3));
  for (std::size_t j = 0; j < bal.data.num_covariates(); ++j) {
    for (double v : bal.data.X.col(j)) {
      CHECK(v >= -1.0);
      CHECK(v < 1.0);
    }
  }
  // |0.5| + |0.25| + |-0.25| + |-0.5| bounds the log-sd.
  for (double s : bal.truth.eta_sigma) CHECK(std::fabs(s) <= 1.5);

  const auto lv = generate(SimDesign::large_variance(2001, 4));
  std::vector<double> sd;
  for (double s : lv.truth.eta_sigma) sd.push_back(std::exp(s));
  std::nth_element(sd.begin(), sd.begin() + 1000, sd.end());
  const double median = sd[1000];
  CHECK(median > std::exp(5.0) / 2);
  CHECK(median < std::exp(5.0) * 2);
  CHECK(lv.data.num_covariates() == 5);
  CHECK(lv.truth.informative_mu.size() == 3);
  CHECK(lv.truth.informative_sigma.size() == 3);
}

TEST_CASE("truth predictors are the coefficients applied to X") {
  const auto s = generate(SimDesign::large_variance(40, 9));
  for (std::size_t i = 0; i < 40; ++i) {
    double mu = s.truth.intercept_mu;
    double sg = s.truth.intercept_sigma;
    for (std::size_t j = 0; j < s.data.num_covariates(); ++j) {
      mu += s.truth.beta_mu[j] * s.data.X(i, j);
      sg += s.truth.beta_sigma[j] * s.data.X(i, j);
    }
    CHECK(s.truth.eta_mu[i] == doctest::Approx(mu).epsilon(1e-14));
    CHECK(s.truth.eta_sigma[i] == doctest::Approx(sg).epsilon(1e-14));
  }
  const auto bal = SimDesign::balanced(10, 0, 1).truth_coefficients();
  CHECK(bal.informative_mu == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(bal.informative_sigma == std::vector<std::size_t>{2, 3, 4, 5});
}

TEST_CASE("evaluate on a perfect model") {
  const auto s = generate(SimDesign::balanced(100, 2, 5));
  auto model = offsets_only(s.data);
  model.offset_mu = s.truth.intercept_mu;
  model.offset_sigma = s.truth.intercept_sigma;
  for (std::size_t j = 0; j < s.data.num_covariates(); ++j) {
    model.coef_mu[j].slope = s.truth.beta_mu[j];
    model.coef_sigma[j].slope = s.truth.beta_sigma[j];
  }
  const auto m = evaluate(model, s.truth, s.data);
  CHECK(m.mse_mu < 1e-28);
  CHECK(m.mse_sigma < 1e-28);
  CHECK(m.fp_mu == 0);
  CHECK(m.fn_mu == 0);
  CHECK(m.fp_sigma == 0);
  CHECK(m.fn_sigma == 0);
}

TEST_CASE("evaluate on the offset model") {
  const auto s = generate(SimDesign::balanced(100, 3, 6));
  const auto m = evaluate(offsets_only(s.data), s.truth, s.data);
  CHECK(m.fp_mu == 0);
  CHECK(m.fp_sigma == 0);
  CHECK(m.fn_mu == 4);
  CHECK(m.fn_sigma == 4);
  CHECK(m.p_m_mu == 0.0);
  CHECK(m.m_stop_used == 0);
  double var = 0, mean = 0;
  for (double v : s.data.y) mean += v;
  mean /= 100;
  for (double v : s.data.y) var += (v - mean) * (v - mean);
  CHECK(m.in_sample_mse == doctest::Approx(var / 100).epsilon(1e-12));
}

TEST_CASE("selection counts partition the covariates") {
  const auto s = generate(SimDesign::balanced(150, 4, 7));
  StepPolicy p;
  for (std::size_t m_stop : {5u, 40u, 300u}) {
    const auto model = boost_noncyclical(s.data, p, m_stop);
    const auto m = evaluate(model, s.truth, s.data);
    std::size_t sel_mu = 0, sel_sigma = 0;
    std::size_t tp_mu = 0, tp_sigma = 0;
    for (std::size_t j = 0; j < s.data.num_covariates(); ++j) {
      const bool a = model.coef_mu[j].slope != 0.0;
      const bool b = model.coef_sigma[j].slope != 0.0;
      sel_mu += a;
      sel_sigma += b;
      tp_mu += a && s.truth.beta_mu[j] != 0.0;
      tp_sigma += b && s.truth.beta_sigma[j] != 0.0;
    }
    CHECK(m.fn_mu + tp_mu == 4);
    CHECK(m.fn_sigma + tp_sigma == 4);
    CHECK(m.fp_mu + tp_mu == sel_mu);
    CHECK(m.fp_sigma + tp_sigma == sel_sigma);
    CHECK(m.p_m_mu >= 0.0);
    CHECK(m.p_m_mu <= 1.0);
    CHECK(m.m_stop_used == m_stop);
  }
}

TEST_CASE("evaluate does not depend on row order") {
  const auto s = generate(SimDesign::balanced(80, 1, 8));
  StepPolicy p;
  const auto model = boost_noncyclical(s.data, p, 50);
  std::vector<std::size_t> perm(80);
  for (std::size_t i = 0; i < 80; ++i) perm[i] = (i * 31) % 80;
  Truth t = s.truth;
  for (std::size_t i = 0; i < 80; ++i) {
    t.eta_mu[i] = s.truth.eta_mu[perm[i]];
    t.eta_sigma[i] = s.truth.eta_sigma[perm[i]];
  }
  const auto a = evaluate(model, s.truth, s.data);
  const auto b = evaluate(model, t, s.data.subset(perm));
  CHECK(a.mse_mu == doctest::Approx(b.mse_mu).epsilon(1e-12));
  CHECK(a.mse_sigma == doctest::Approx(b.mse_sigma).epsilon(1e-12));
  CHECK(a.in_sample_mse == doctest::Approx(b.in_sample_mse).epsilon(1e-12));
}

TEST_CASE("study runs are reproducible") {
  StepPolicy fsl;
  fsl.kind = StepKind::fsl;
  StepPolicy saasl;
  CvSettings cv;
  cv.folds = 3;
  cv.m_max = 30;
  cv.m_max_for[StepKind::fsl] = 60;
  const auto design = SimDesign::balanced(60, 1, 21);
  const auto a = run_study(design, {fsl, saasl}, 2, cv);
  const auto b = run_study(design, {fsl, saasl}, 2, cv);
  REQUIRE(a.size() == 4);
  for (std::size_t r = 0; r < a.size(); ++r) {
    CHECK(a[r].ok);
    CHECK(a[r].run == r / 2);
    CHECK(a[r].data_seed == b[r].data_seed);
    CHECK(a[r].metrics.mse_mu == b[r].metrics.mse_mu);
    CHECK(a[r].metrics.m_stop_used == b[r].metrics.m_stop_used);
    CHECK(a[r].max_risk_increase <= 1e-9);
  }
  CHECK(a[0].policy == StepKind::fsl);
  CHECK(a[1].policy == StepKind::saasl);
  CHECK(a[0].data_seed == a[1].data_seed);
  CHECK(a[0].data_seed != a[2].data_seed);
  CHECK(a[0].metrics.m_stop_used <= 60);
  CHECK(a[1].metrics.m_stop_used <= 30);
  CHECK_THROWS_AS(run_study(design, {}, 1, cv), UsageError);
}

TEST_CASE("metric names follow the struct") {
  CHECK(sim_metric_names().size() == 9);
  CHECK(sim_metric_names().front() == "mse_mu");
  CHECK(parse_design_kind("large-variance") == DesignKind::large_variance);
  CHECK_THROWS_AS(parse_design_kind("wide"), UsageError);
}
