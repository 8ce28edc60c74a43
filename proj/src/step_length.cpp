#include "gamlssboost/step_length.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "gamlssboost/error.hpp"

namespace gamlssboost {

std::string_view to_string(Parameter p) { return p == Parameter::mu ? "mu" : "sigma"; }

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::fsl: return "fsl";
    case StepKind::asl: return "asl";
    case StepKind::saasl: return "saasl";
    case StepKind::saasl05: return "saasl05";
  }
  return "?";
}

StepKind parse_step_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fsl") return StepKind::fsl;
  if (lower == "asl") return StepKind::asl;
  if (lower == "saasl") return StepKind::saasl;
  if (lower == "saasl05") return StepKind::saasl05;
  throw UsageError("unknown step-length policy '" + std::string(text) +
                   "' (expected fsl, asl, saasl or saasl05)");
}

Interval parse_interval(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("interval '" + std::string(text) + "' is not of the form LO:HI");
  }
  auto parse = [&](std::string_view part) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(part), &used);
      if (used != part.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw UsageError("interval '" + std::string(text) + "' has a non-numeric bound");
    }
  };
  return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
}

void StepPolicy::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw UsageError("lambda must lie in (0, 1]");
  if (!(nu0 > 0.0) || !std::isfinite(nu0)) throw UsageError("nu0 must be positive");
  if (!(tol > 0.0)) throw UsageError("line-search tolerance must be positive");
  for (const auto& [name, iv] : {std::pair{"mu", interval_mu}, std::pair{"sigma", interval_sigma}}) {
    if (!(iv.lo >= 0.0 && iv.lo < iv.hi) || !std::isfinite(iv.hi)) {
      throw UsageError(std::string("search interval for ") + name +
                       " must satisfy 0 <= lo < hi");
    }
  }
}

double analytic_nu_mu(std::span<const double> h, std::span<const double> sigma_sq_prev) {
  if (h.size() != sigma_sq_prev.size()) {
    throw DimensionError("base-learner fit and variance vectors differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(sigma_sq_prev[i] > 0.0)) throw NumericError("nonpositive variance", i);
    const double h2 = h[i] * h[i];
    num += h2;
    den += h2 / sigma_sq_prev[i];
  }
  if (num == 0.0) throw DegenerateLearnerError("base-learner fit is identically zero");
  const double nu = num / den;
  if (!std::isfinite(nu)) throw NumericError("non-finite analytic step-length");
  return nu;
}

LineSearchResult line_search(const std::function<double(double)>& phi, Interval interval,
                             double tol) {
  constexpr int kMaxIterations = 200;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  auto eval = [&](double nu) {
    const double v = phi(nu);
    if (!std::isfinite(v)) {
      throw NumericError("line search objective is non-finite at nu = " + std::to_string(nu));
    }
    return v;
  };

  double a = interval.lo;
  double b = interval.hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  int it = 0;
  while (b - a > 2.0 * tol && it < kMaxIterations) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
    ++it;
  }
  LineSearchResult out;
  out.nu = 0.5 * (a + b);
  out.iterations = it;
  out.boundary_hit = out.nu - interval.lo <= tol || interval.hi - out.nu <= tol;
  return out;
}

double nu_sigma_foc_residual(double nu, std::span<const double> h, std::span<const double> eps) {
  if (h.size() != eps.size()) throw DimensionError("h and eps differ in length");
  // h_i * [1 - (h_i + eps_i + 1) e^{-2 nu h_i}], with 1 - e^{-x} via expm1.
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = 2.0 * nu * h[i];
    const double decay = std::exp(-x);
    if (!std::isfinite(decay)) throw NumericError("overflow in first-order condition", i);
    total += h[i] * (-std::expm1(-x) - (h[i] + eps[i]) * decay);
  }
  return total;
}

StepResult step_for(Parameter parameter, const StepPolicy& policy,
                    const std::function<double(double)>& risk_along_nu,
                    std::span<const double> h,
                    std::optional<std::span<const double>> sigma_sq_prev) {
  StepResult r;
  auto searched = [&](Interval iv) {
    const auto ls = line_search(risk_along_nu, iv, policy.tol);
    r.nu_star = ls.nu;
    r.boundary_hit = ls.boundary_hit;
  };
  switch (policy.kind) {
    case StepKind::fsl:
      r.nu_star = 1.0;
      r.nu = policy.nu0;
      return r;
    case StepKind::asl:
      searched(parameter == Parameter::mu ? policy.interval_mu : policy.interval_sigma);
      break;
    case StepKind::saasl:
    case StepKind::saasl05:
      if (parameter == Parameter::mu) {
        if (!sigma_sq_prev) {
          throw UsageError("semi-analytical step for mu needs the previous variances");
        }
        r.nu_star = analytic_nu_mu(h, *sigma_sq_prev);
      } else if (policy.kind == StepKind::saasl) {
        searched(policy.interval_sigma);
      } else {
        r.nu_star = 0.5;
      }
      break;
  }
  r.nu = policy.lambda * r.nu_star;
  return r;
}

}  // namespace gamlssboost
