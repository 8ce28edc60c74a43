#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gamlssboost/error.hpp"
#include "gamlssboost/family.hpp"
#include "gamlssboost/random.hpp"
#include "oracles.hpp"

using namespace gamlssboost;

namespace {

struct Instance {
  std::vector<double> y;
  PredictorPair p;
};

Instance random_instance(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Instance in;
  for (std::size_t i = 0; i < n; ++i) {
    in.y.push_back(rng.uniform(-20.0, 20.0));
    in.p.eta_mu.push_back(rng.uniform(-10.0, 10.0));
    in.p.eta_sigma.push_back(rng.uniform(-2.0, 3.0));
  }
  return in;
}

}  // namespace

TEST_CASE("loss at simple points") {
  const std::vector<double> y0{0.0};
  CHECK(loss(y0, PredictorPair({0.0}, {0.0})) == doctest::Approx(0.9189385332046727).epsilon(1e-15));
  const std::vector<double> y1{1.0};
  CHECK(loss(y1, PredictorPair({0.0}, {0.0})) == doctest::Approx(1.4189385332046727).epsilon(1e-15));

  // Frozen from oracle::neg_log_density summed over both observations.
  const std::vector<double> y{2.0, 0.0};
  const PredictorPair p({1.0, 1.0}, {std::log(2.0), std::log(2.0)});
  CHECK(loss(y, p) == doctest::Approx(3.4741714275292357).epsilon(1e-14));
  CHECK(loss(y, p) == doctest::Approx(static_cast<double>(oracle::total_nll(y, p.eta_mu, p.eta_sigma))).epsilon(1e-14));
}

TEST_CASE("gradients at simple points") {
  const std::vector<double> y0{0.0};
  const std::vector<double> y1{1.0};
  const PredictorPair p({0.0}, {0.0});
  CHECK(grad_mu(y0, p)[0] == 0.0);
  CHECK(grad_mu(y1, p)[0] == 1.0);
  CHECK(grad_sigma(y0, p)[0] == -1.0);
  CHECK(grad_sigma(y1, p)[0] == 0.0);
}

TEST_CASE("negative gradients match finite differences") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto in = random_instance(seed, 50);
    const auto gm = grad_mu(in.y, in.p);
    const auto gs = grad_sigma(in.y, in.p);
    for (std::size_t i = 0; i < in.y.size(); ++i) {
      const long double fm = oracle::fd_partial(in.y[i], in.p.eta_mu[i], in.p.eta_sigma[i], false);
      const long double fs = oracle::fd_partial(in.y[i], in.p.eta_mu[i], in.p.eta_sigma[i], true);
      CHECK(std::fabs(static_cast<double>(-fm) - gm[i]) <= 1e-6 * std::fabs(gm[i]) + 1e-12);
      CHECK(std::fabs(static_cast<double>(-fs) - gs[i]) <= 1e-6 * std::fabs(gs[i]) + 1e-12);
    }
  }
}

TEST_CASE("loss is permutation invariant and reduces to least squares at unit sd") {
  auto in = random_instance(7, 40);
  const double base = loss(in.y, in.p);
  std::vector<std::size_t> perm(in.y.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::rotate(perm.begin(), perm.begin() + 13, perm.end());
  Instance shuffled;
  for (auto k : perm) {
    shuffled.y.push_back(in.y[k]);
    shuffled.p.eta_mu.push_back(in.p.eta_mu[k]);
    shuffled.p.eta_sigma.push_back(in.p.eta_sigma[k]);
  }
  CHECK(loss(shuffled.y, shuffled.p) == doctest::Approx(base).epsilon(1e-13));

  std::fill(in.p.eta_sigma.begin(), in.p.eta_sigma.end(), 0.0);
  double ls = 0.0;
  for (std::size_t i = 0; i < in.y.size(); ++i) ls += 0.5 * std::pow(in.y[i] - in.p.eta_mu[i], 2);
  CHECK(loss(in.y, in.p) == doctest::Approx(0.5 * 40 * std::log(2 * M_PI) + ls).epsilon(1e-13));
}

TEST_CASE("length mismatch and non-finite input") {
  const std::vector<double> y{1.0, 2.0};
  CHECK_THROWS_AS(loss(y, PredictorPair({0.0}, {0.0})), DimensionError);
  CHECK_THROWS_AS(grad_mu(y, PredictorPair({0.0, 0.0}, {0.0})), DimensionError);

  const PredictorPair bad({0.0, 0.0}, {0.0, std::nan("")});
  try {
    (void)loss(y, bad);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.index() == 1);
  }
  // Residual so large that the scaled square overflows.
  const std::vector<double> huge{1e200, 0.0};
  CHECK_THROWS_AS(grad_sigma(huge, PredictorPair({0.0, 0.0}, {-10.0, 0.0})), NumericError);
}

TEST_CASE("eta_sigma is clamped before exponentiation") {
  const std::vector<double> y{1.0};
  EvalDiagnostics diag;
  const double v = GaussianLocScale::loss(y, PredictorPair({0.0}, {400.0}), &diag);
  CHECK(diag.clamped == 1);
  CHECK(v == doctest::Approx(kHalfLogTwoPi + 350.0));
  CHECK(GaussianLocScale::loss(y, PredictorPair({0.0}, {-400.0}), &diag) > 1e300);
}
