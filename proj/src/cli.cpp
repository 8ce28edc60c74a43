#include "gamlssboost/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gamlssboost/cross_validation.hpp"
#include "gamlssboost/csv_io.hpp"
#include "gamlssboost/error.hpp"

namespace gamlssboost::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  policy.validate();
  switch (command) {
    case Command::fit:
    case Command::cv:
      if (input.empty()) throw UsageError("--input is required");
      if (response.empty()) throw UsageError("--response is required");
      break;
    case Command::simulate:
      if (runs < 1) throw UsageError("--runs must be at least 1");
      if (n < 10) throw UsageError("--n must be at least 10");
      if (policies.empty()) throw UsageError("--policies must name at least one policy");
      break;
  }
  if (command != Command::fit) {
    if (m_max < 1) throw UsageError("--mmax must be at least 1");
    if (folds < 2) throw UsageError("--folds must be at least 2");
  }
}

namespace {

std::vector<StepKind> parse_policy_list(const std::string& text) {
  std::vector<StepKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_step_kind(item));
  }
  return out;
}

std::pair<StepKind, std::size_t> parse_policy_cap(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--mmax-for expects POLICY=N, got '" + text + "'");
  try {
    return {parse_step_kind(text.substr(0, eq)), std::stoull(text.substr(eq + 1))};
  } catch (const std::logic_error&) {
    throw UsageError("--mmax-for expects POLICY=N, got '" + text + "'");
  }
}

Interval interval_from_json(const json& j) {
  if (j.is_string()) return parse_interval(j.get<std::string>());
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw UsageError("interval must be \"LO:HI\" or [lo, hi]");
}

void apply_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw UsageError("config file must contain a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "input") c.input = v.get<std::string>();
    else if (key == "response") c.response = v.get<std::string>();
    else if (key == "out") c.out_dir = v.get<std::string>();
    else if (key == "policy") c.policy.kind = parse_step_kind(v.get<std::string>());
    else if (key == "lambda") c.policy.lambda = v.get<double>();
    else if (key == "nu0") c.policy.nu0 = v.get<double>();
    else if (key == "interval_mu") c.policy.interval_mu = interval_from_json(v);
    else if (key == "interval_sigma") c.policy.interval_sigma = interval_from_json(v);
    else if (key == "tol") c.policy.tol = v.get<double>();
    else if (key == "mstop") c.m_stop = v.get<std::size_t>();
    else if (key == "mmax") c.m_max = v.get<std::size_t>();
    else if (key == "folds") c.folds = v.get<std::size_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "refit") c.refit = v.get<bool>();
    else if (key == "mode") {
      const auto mode = v.get<std::string>();
      if (mode != "noncyclical" && mode != "cyclical") throw UsageError("unknown mode '" + mode + "'");
      c.mode = mode == "cyclical" ? BoostMode::cyclical : BoostMode::noncyclical;
    }
    else if (key == "mstop_mu") c.m_stop_mu = v.get<std::size_t>();
    else if (key == "mstop_sigma") c.m_stop_sigma = v.get<std::size_t>();
    else if (key == "design") c.design = parse_design_kind(v.get<std::string>());
    else if (key == "n") c.n = v.get<std::size_t>();
    else if (key == "p_ninf") c.p_ninf = v.get<std::size_t>();
    else if (key == "runs") c.runs = v.get<std::size_t>();
    else if (key == "policies") {
      if (v.is_string()) {
        c.policies = parse_policy_list(v.get<std::string>());
      } else {
        c.policies.clear();
        for (const auto& p : v) c.policies.push_back(parse_step_kind(p.get<std::string>()));
      }
    } else if (key == "mmax_for") {
      for (const auto& [name, cap] : v.items()) c.m_max_for[parse_step_kind(name)] = cap.get<std::size_t>();
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

std::optional<std::string> find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.starts_with("--config=")) return std::string(a.substr(9));
  }
  return std::nullopt;
}

Dataset load_input(const RunConfig& c) {
  return dataset_from_csv(parse_csv(read_text_file(c.input)), c.response);
}

void write_output(const RunConfig& c, const std::string& name, std::string_view content) {
  fs::create_directories(c.out_dir);
  write_text_file((fs::path(c.out_dir) / name).string(), content);
}

BoostOptions warn_to(std::ostream& log) {
  BoostOptions opts;
  opts.on_warning = [&log](const std::string& msg) { log << "warning: " << msg << "\n"; };
  return opts;
}

void write_fit_outputs(const RunConfig& c, const BoostModel& model, const Dataset& data) {
  write_output(c, "coefficients.csv", coefficients_csv(model));
  write_output(c, "trace.csv", trace_csv(model));
  write_output(c, "risk_path.csv", risk_path_csv(risk_path(model, data)));
}

void report_boundary(const BoostModel& model, std::ostream& log) {
  if (model.boundary_hits_mu > 0) {
    log << "warning: " << model.boundary_hits_mu
        << " mu step-lengths hit the search interval boundary; widen --interval-mu\n";
  }
  if (model.boundary_hits_sigma > 0) {
    log << "warning: " << model.boundary_hits_sigma
        << " sigma step-lengths hit the search interval boundary; widen --interval-sigma\n";
  }
}

void add_policy_options(CLI::App* app, RunConfig& c, std::string& policy, std::string& iv_mu,
                        std::string& iv_sigma) {
  app->add_option("--policy", policy, "step-length policy: fsl, asl, saasl, saasl05");
  app->add_option("--lambda", c.policy.lambda, "shrinkage applied to the optimal step-length");
  app->add_option("--nu0", c.policy.nu0, "fixed step-length for fsl");
  app->add_option("--interval-mu", iv_mu, "line-search interval for mu, LO:HI");
  app->add_option("--interval-sigma", iv_sigma, "line-search interval for sigma, LO:HI");
  app->add_option("--tol", c.policy.tol, "line-search tolerance");
  app->add_option("--out", c.out_dir, "output directory");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--config", "JSON config file; flags override its values");
}

}  // namespace

int cmd_fit(const RunConfig& c, std::ostream& log) {
  c.validate();
  const auto data = load_input(c);
  const auto opts = warn_to(log);
  const auto model = c.mode == BoostMode::cyclical
                         ? boost_cyclical(data, c.policy, c.m_stop_mu, c.m_stop_sigma, opts)
                         : boost_noncyclical(data, c.policy, c.m_stop, opts);
  report_boundary(model, log);
  if (model.status == FitStatus::early_stop) {
    log << "note: fit stopped after " << model.m_done << " updates (all candidates degenerate)\n";
  }
  write_fit_outputs(c, model, data);
  return kOk;
}

int cmd_cv(const RunConfig& c, std::ostream& log) {
  c.validate();
  const auto data = load_input(c);
  const auto cv = kfold_cv(data, c.policy, c.m_max, c.folds, c.seed);
  write_output(c, "cv_curve.csv", cv_curve_csv(cv));
  write_output(c, "m_best.txt", std::to_string(cv.m_best) + "\n");
  if (cv.early_stops > 0) log << "note: " << cv.early_stops << " fold fits stopped early\n";
  if (c.refit) {
    const auto model = boost_noncyclical(data, c.policy, cv.m_best, warn_to(log));
    report_boundary(model, log);
    write_fit_outputs(c, model, data);
  }
  return kOk;
}

int cmd_simulate(const RunConfig& c, std::ostream& log) {
  c.validate();
  SimDesign design{c.design, c.n, 0, c.seed};
  design.p_ninf = c.p_ninf.value_or(c.design == DesignKind::large_variance ? 2 : 0);
  std::vector<StepPolicy> policies;
  for (auto kind : c.policies) {
    StepPolicy p = c.policy;
    p.kind = kind;
    policies.push_back(p);
  }
  CvSettings cv{c.folds, c.m_max, c.m_max_for};
  const auto rows = run_study(design, policies, c.runs, cv);
  for (const auto& r : rows) {
    if (!r.ok) log << "warning: run " << r.run << " (" << to_string(r.policy) << ") failed: " << r.error << "\n";
  }
  write_output(c, "study.csv", study_csv(rows));
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string policy, iv_mu, iv_sigma, policies, mode, design;
  std::vector<std::string> caps;
  std::size_t p_ninf = 0;

  try {
    if (const auto path = find_config_path(argc, argv)) {
      try {
        apply_json(json::parse(read_text_file(*path)), c);
      } catch (const json::exception& e) {
        throw UsageError("invalid config file '" + *path + "': " + e.what());
      } catch (const DataError& e) {
        throw UsageError(e.what());
      }
    }

    CLI::App app{"Componentwise gradient boosting for Gaussian location-scale regression"};
    app.require_subcommand(1);
    app.add_option("--config", "JSON config file; flags override its values");

    auto* fit = app.add_subcommand("fit", "fit a model and write coefficients, trace and risk path");
    auto* cv = app.add_subcommand("cv", "choose the stopping iteration by k-fold cross-validation");
    auto* sim = app.add_subcommand("simulate", "run a simulation study");

    for (auto* sub : {fit, cv}) {
      sub->add_option("--input", c.input, "CSV file with a header row");
      sub->add_option("--response", c.response, "name of the response column");
      add_policy_options(sub, c, policy, iv_mu, iv_sigma);
    }
    fit->add_option("--mstop", c.m_stop, "number of boosting iterations");
    fit->add_option("--mode", mode, "noncyclical (default) or cyclical");
    fit->add_option("--mstop-mu", c.m_stop_mu, "cyclical mode: iterations for mu");
    fit->add_option("--mstop-sigma", c.m_stop_sigma, "cyclical mode: iterations for sigma");
    cv->add_option("--mmax", c.m_max, "largest stopping iteration considered");
    cv->add_option("--folds", c.folds, "number of folds");
    cv->add_flag("--refit", c.refit, "refit on all data at the chosen stopping iteration");

    sim->add_option("--design", design, "balanced or large_variance");
    sim->add_option("--n", c.n, "observations per replicate");
    auto* p_ninf_opt = sim->add_option("--p-ninf", p_ninf, "number of noise covariates");
    sim->add_option("--runs", c.runs, "number of replicates B");
    sim->add_option("--policies", policies, "comma-separated policies");
    sim->add_option("--mmax", c.m_max, "CV iteration cap");
    sim->add_option("--mmax-for", caps, "per-policy cap, POLICY=N (repeatable)");
    sim->add_option("--folds", c.folds, "number of CV folds");
    add_policy_options(sim, c, policy, iv_mu, iv_sigma);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }

    if (p_ninf_opt->count() > 0) c.p_ninf = p_ninf;
    if (!policy.empty()) c.policy.kind = parse_step_kind(policy);
    if (!iv_mu.empty()) c.policy.interval_mu = parse_interval(iv_mu);
    if (!iv_sigma.empty()) c.policy.interval_sigma = parse_interval(iv_sigma);
    if (!policies.empty()) c.policies = parse_policy_list(policies);
    if (!design.empty()) c.design = parse_design_kind(design);
    for (const auto& cap : caps) {
      const auto [kind, limit] = parse_policy_cap(cap);
      c.m_max_for.insert_or_assign(kind, limit);
    }
    if (!mode.empty()) {
      if (mode != "noncyclical" && mode != "cyclical") throw UsageError("unknown mode '" + mode + "'");
      c.mode = mode == "cyclical" ? BoostMode::cyclical : BoostMode::noncyclical;
    }

    if (fit->parsed()) {
      c.command = Command::fit;
      return cmd_fit(c, err);
    }
    if (cv->parsed()) {
      c.command = Command::cv;
      return cmd_cv(c, err);
    }
    c.command = Command::simulate;
    return cmd_simulate(c, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const DegenerateLearnerError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const Error& e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  }
}

}  // namespace gamlssboost::cli
