#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/simulation.hpp"
#include "gamlssboost/step_length.hpp"

namespace gamlssboost::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kNumeric = 3,
};

enum class Command { fit, cv, simulate };

struct RunConfig {
  Command command = Command::fit;
  std::string input;
  std::string response;
  std::string out_dir = ".";
  StepPolicy policy;
  std::size_t m_stop = 100;
  std::size_t m_max = 1000;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  bool refit = false;

  BoostMode mode = BoostMode::noncyclical;
  std::size_t m_stop_mu = 0;
  std::size_t m_stop_sigma = 0;

  DesignKind design = DesignKind::balanced;
  std::size_t n = 500;
  std::optional<std::size_t> p_ninf;  ///< design default when unset
  std::size_t runs = 1;
  std::vector<StepKind> policies = {StepKind::fsl, StepKind::asl, StepKind::saasl,
                                    StepKind::saasl05};
  std::map<StepKind, std::size_t> m_max_for;

  /// Throws UsageError on inconsistent settings.
  void validate() const;
};

/// Writes coefficients.csv, trace.csv and risk_path.csv to config.out_dir.
int cmd_fit(const RunConfig& config, std::ostream& log);
/// Writes cv_curve.csv and m_best.txt; with refit also the cmd_fit outputs at m_best.
int cmd_cv(const RunConfig& config, std::ostream& log);
/// Writes study.csv.
int cmd_simulate(const RunConfig& config, std::ostream& log);

/// Parses arguments (and an optional --config JSON file, overridden by
/// flags), dispatches, and maps exceptions onto exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gamlssboost::cli
