#pragma once

// JSON reports behind the command-line verbs. Bodies are deterministic for a
// given RunConfig; the only volatile value (a timestamp) lives in the header
// added by wrap_report.

#include "liesymp/catalog.hpp"
#include "liesymp/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liesymp {

struct RunConfig {
  std::string model;
  /// Model bundle JSON path; replaces `model` when set.
  std::string file;
  /// Name of a notable cocycle, or a path to a JSON file holding a matrix
  /// (or {"matrix": ...}).
  std::string cocycle;
  std::optional<RationalVector> alpha;
  std::optional<Rational> eta;
  std::uint64_t seed = 0;
  double tol_rank = kDefaultTolRank;
  double quad_tol = QuadratureRule{}.tol;
  /// Explicit path for `theta`, as a JSON list of {"X": [...], "tau": t}.
  std::string path;
};

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_obstructed = 2, exit_indeterminate = 3, exit_invariant = 4 };

struct Report {
  nlohmann::json body;
  int exit_code = exit_ok;
};

inline constexpr std::size_t kVerifyPairs = 100;
inline constexpr std::size_t kVerifyNeebSamples = 50;
inline constexpr double kVerifyCocycleTol = 1e-8;
inline constexpr double kVerifyNeebTol = 1e-6;
inline constexpr double kVerifyDerivativeTol = 1e-8;
inline constexpr double kVerifyHatTol = 1e-8;
inline constexpr double kVerifyPoissonTol = 1e-5;

const std::vector<std::string>& verbs();

/// Validates the config (tolerances positive) and dispatches. Library errors
/// propagate as Error.
Report run_verb(const std::string& verb, const RunConfig& config);

/// The report for an error, with the module-qualified code.
Report error_report(const Error& error);
int exit_code_for(ErrorCode code);

/// {"header": {tool, version, verb, timestamp}, "body": ...}.
nlohmann::json wrap_report(const std::string& verb, const Report& report, const std::string& timestamp);

Model load_model(const RunConfig& config);
TwoCochain select_cocycle(const Model& model, const std::string& selector);

}  // namespace liesymp
