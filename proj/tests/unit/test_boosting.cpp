#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/error.hpp"
#include "gamlssboost/random.hpp"
#include "oracles.hpp"

using namespace gamlssboost;

namespace {

Dataset make_data(std::uint64_t seed, std::size_t n, std::size_t J) {
  Rng rng(seed);
  std::vector<std::vector<double>> cols(J, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& v : c) v = rng.uniform(-1, 1);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = 1.0 + 2.0 * cols[0][i] - (J > 1 ? cols[1][i] : 0.0);
    const double ls = 0.2 + 0.6 * cols[J - 1][i];
    d.y.push_back(mu + std::exp(ls) * rng.normal());
  }
  d.X = Matrix::from_columns(cols);
  d.names = default_names(J);
  return d;
}

StepPolicy policy_of(StepKind k) {
  StepPolicy p;
  p.kind = k;
  return p;
}

std::vector<std::vector<double>> columns_of(const Matrix& X) {
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < X.cols(); ++j) cols.emplace_back(X.col(j).begin(), X.col(j).end());
  return cols;
}

}  // namespace

TEST_CASE("offsets are the Gaussian MLE") {
  const std::vector<double> a{-1.0, 1.0};
  auto [m, s] = init_offsets(a);
  CHECK(m == 0.0);
  CHECK(s == 0.0);

  const std::vector<double> b{0.0, 0.0, 0.0, 4.0};
  std::tie(m, s) = init_offsets(b);
  CHECK(m == 1.0);
  CHECK(s == doctest::Approx(0.5493061443340548).epsilon(1e-15));

  Rng rng(5);
  std::vector<double> big(200000);
  for (auto& v : big) v = 5.0 + 150.0 * rng.normal();
  std::tie(m, s) = init_offsets(big);
  CHECK(std::fabs(m - 5.0) < 5 * 150.0 / std::sqrt(200000.0));
  CHECK(std::fabs(s - std::log(150.0)) < 0.01);

  CHECK_THROWS_AS(init_offsets(std::vector<double>{1.0}), DataError);
  CHECK_THROWS_AS(init_offsets(std::vector<double>{2.0, 2.0, 2.0}), DataError);
}

TEST_CASE("zero iterations leaves only the offsets") {
  const auto d = make_data(1, 30, 3);
  const auto model = boost_noncyclical(d, policy_of(StepKind::saasl), 0);
  CHECK(model.m_done == 0);
  CHECK(model.trace.empty());
  const auto [m, s] = init_offsets(d.y);
  const auto p = predict(model, d.X);
  for (std::size_t i = 0; i < d.n(); ++i) {
    CHECK(p.mu[i] == m);
    CHECK(p.sigma[i] == doctest::Approx(std::exp(s)).epsilon(1e-15));
  }
  CHECK(risk_path(model, d).size() == 1);
}

TEST_CASE("fixed step boosting matches the hand-stepped oracle") {
  for (std::uint64_t seed : {2u, 3u, 4u}) {
    for (std::size_t J : {1u, 3u}) {
      const auto d = make_data(seed, 5 + 20 * (seed - 2), J);
      auto policy = policy_of(StepKind::fsl);
      const auto model = boost_noncyclical(d, policy, 25);
      const auto hand = oracle::hand_stepped_boosting(d.y, columns_of(d.X), 25, 0.1, 0.1);
      REQUIRE(model.trace.size() == hand.steps.size());
      for (std::size_t t = 0; t < hand.steps.size(); ++t) {
        CHECK(static_cast<int>(model.trace[t].k_star) == hand.steps[t].k);
        CHECK(model.trace[t].j_star == hand.steps[t].j);
        CHECK(model.trace[t].nu == 0.1);
        CHECK(model.trace[t].nu_star == 1.0);
      }
      for (std::size_t j = 0; j < J; ++j) {
        CHECK(model.coef_mu[j].intercept == doctest::Approx(hand.intercept_mu[j]).epsilon(1e-10));
        CHECK(model.coef_mu[j].slope == doctest::Approx(hand.slope_mu[j]).epsilon(1e-10));
        CHECK(model.coef_sigma[j].intercept == doctest::Approx(hand.intercept_sigma[j]).epsilon(1e-10));
        CHECK(model.coef_sigma[j].slope == doctest::Approx(hand.slope_sigma[j]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("non-cyclical selection rule") {
  for (auto kind : {StepKind::fsl, StepKind::asl, StepKind::saasl, StepKind::saasl05}) {
    const auto d = make_data(7, 80, 4);
    const auto model = boost_noncyclical(d, policy_of(kind), 60);
    REQUIRE(model.m_done == 60);
    CHECK(model.updates(Parameter::mu) + model.updates(Parameter::sigma) == 60);
    for (const auto& rec : model.trace) {
      const bool mu_wins = rec.delta_rho_mu <= rec.delta_rho_sigma;
      CHECK((rec.k_star == Parameter::mu) == mu_wins);
      CHECK(rec.risk_after == (mu_wins ? rec.delta_rho_mu : rec.delta_rho_sigma));
    }
  }
}

TEST_CASE("coefficients, replay and risk path agree") {
  for (auto kind : {StepKind::fsl, StepKind::asl, StepKind::saasl, StepKind::saasl05}) {
    const auto d = make_data(11, 120, 5);
    const auto model = boost_noncyclical(d, policy_of(kind), 150);
    const auto replay = replay_predictors(model, d.X);
    const auto coef = coefficient_predictors(model, d.X);
    for (std::size_t i = 0; i < d.n(); ++i) {
      CHECK(coef.eta_mu[i] == doctest::Approx(replay.eta_mu[i]).epsilon(1e-8));
      CHECK(coef.eta_sigma[i] == doctest::Approx(replay.eta_sigma[i]).epsilon(1e-8));
    }
    const auto path = risk_path(model, d);
    REQUIRE(path.size() == model.m_done + 1);
    CHECK(path[0] == loss(d.y, PredictorPair(d.n(), model.offset_mu, model.offset_sigma)));
    for (std::size_t m = 1; m < path.size(); ++m) {
      CHECK(path[m] <= path[m - 1] + 1e-9);
      CHECK(path[m] == model.trace[m - 1].risk_after);
    }
    CHECK(path.back() == loss(d.y, replay));
    // Partial replay reproduces intermediate risks.
    CHECK(loss(d.y, replay_predictors(model, d.X, 40)) == path[40]);
  }
}

TEST_CASE("semi-analytical and line-searched mu steps coincide") {
  const auto d = make_data(13, 100, 3);
  const auto a = boost_noncyclical(d, policy_of(StepKind::asl), 100);
  const auto s = boost_noncyclical(d, policy_of(StepKind::saasl), 100);
  REQUIRE(a.m_done == s.m_done);
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    CHECK(a.trace[t].k_star == s.trace[t].k_star);
    CHECK(a.trace[t].j_star == s.trace[t].j_star);
    CHECK(std::fabs(a.trace[t].nu - s.trace[t].nu) < 1e-4);
  }
}

TEST_CASE("cyclical boosting updates mu then sigma") {
  const auto d = make_data(17, 50, 2);
  auto model = boost_cyclical(d, policy_of(StepKind::saasl), 1, 1);
  REQUIRE(model.trace.size() == 2);
  CHECK(model.trace[0].k_star == Parameter::mu);
  CHECK(model.trace[1].k_star == Parameter::sigma);
  CHECK(std::isnan(model.trace[0].delta_rho_sigma));
  CHECK(std::isnan(model.trace[1].delta_rho_mu));
  CHECK(model.mode == BoostMode::cyclical);

  model = boost_cyclical(d, policy_of(StepKind::fsl), 10, 0);
  CHECK(model.updates(Parameter::mu) == 10);
  CHECK(model.updates(Parameter::sigma) == 0);
  model = boost_cyclical(d, policy_of(StepKind::fsl), 3, 7);
  CHECK(model.updates(Parameter::mu) == 3);
  CHECK(model.updates(Parameter::sigma) == 7);
  const auto path = risk_path(model, d);
  CHECK(path.back() == loss(d.y, replay_predictors(model, d.X)));

  model = boost_cyclical(d, policy_of(StepKind::fsl), 0, 0);
  CHECK(model.trace.empty());
}

TEST_CASE("prediction checks and invariance") {
  const auto d = make_data(19, 40, 3);
  const auto model = boost_noncyclical(d, policy_of(StepKind::saasl), 30);
  CHECK_THROWS_AS(predict(model, Matrix(5, 2)), DimensionError);
  CHECK_THROWS_AS(risk_path(model, Dataset{d.y, Matrix(d.n(), 2), default_names(2)}), DimensionError);

  std::vector<std::size_t> perm(d.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const auto full = predict(model, d.X);
  const auto shuffled = predict(model, d.X.select_rows(perm));
  for (std::size_t i = 0; i < d.n(); ++i) {
    CHECK(shuffled.mu[i] == full.mu[perm[i]]);
    CHECK(shuffled.sigma[i] == full.sigma[perm[i]]);
  }
}

TEST_CASE("degenerate data stops early") {
  Dataset d;
  d.y = {-1.0, 1.0};
  d.X = Matrix(2, 2, 3.0);
  d.names = default_names(2);
  const auto model = boost_noncyclical(d, policy_of(StepKind::saasl), 10);
  CHECK(model.status == FitStatus::early_stop);
  CHECK(model.m_done == 0);
  const auto cyc = boost_cyclical(d, policy_of(StepKind::saasl), 5, 5);
  CHECK(cyc.status == FitStatus::early_stop);
}

TEST_CASE("invalid inputs are rejected") {
  auto d = make_data(23, 20, 2);
  auto bad = policy_of(StepKind::asl);
  bad.lambda = 2.0;
  CHECK_THROWS_AS(boost_noncyclical(d, bad, 5), UsageError);
  d.y[3] = std::nan("");
  CHECK_THROWS_AS(boost_noncyclical(d, policy_of(StepKind::fsl), 5), DataError);
}

TEST_CASE("boundary hits are reported once per parameter") {
  const auto d = make_data(29, 60, 2);
  auto p = policy_of(StepKind::asl);
  p.interval_mu = {0.0, 0.01};
  std::vector<std::string> warnings;
  BoostOptions opts;
  opts.on_warning = [&](const std::string& w) { warnings.push_back(w); };
  const auto model = boost_noncyclical(d, p, 20, opts);
  CHECK(model.boundary_hits_mu >= 1);
  CHECK(std::count_if(warnings.begin(), warnings.end(),
                      [](const std::string& w) { return w.find(" mu ") != std::string::npos; }) == 1);
}
