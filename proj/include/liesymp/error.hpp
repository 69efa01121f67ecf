#pragma once

#include <stdexcept>
#include <string>

namespace liesymp {

enum class ErrorCode {
  dimension_mismatch,
  invalid_structure,
  not_skew,
  not_cocycle,
  indeterminate_rank,
  non_finite,
  left_embedded_algebra,
  chart_mismatch,
  quadrature_failure,
  obstructed,
  no_canonical_path,
  rank_deficient_frame,
  unknown_model,
  unknown_cocycle,
  invalid_json,
  invariant_failure,
  usage,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Carries the module that raised it so front ends can
/// report a qualified code such as "algebra.not_cocycle".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }
  std::string qualified_code() const { return module_ + "." + to_string(code_); }

 private:
  ErrorCode code_;
  std::string module_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_structure: return "invalid_structure";
    case ErrorCode::not_skew: return "not_skew";
    case ErrorCode::not_cocycle: return "not_cocycle";
    case ErrorCode::indeterminate_rank: return "indeterminate_rank";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::left_embedded_algebra: return "left_embedded_algebra";
    case ErrorCode::chart_mismatch: return "chart_mismatch";
    case ErrorCode::quadrature_failure: return "quadrature_failure";
    case ErrorCode::obstructed: return "obstructed";
    case ErrorCode::no_canonical_path: return "no_canonical_path";
    case ErrorCode::rank_deficient_frame: return "rank_deficient_frame";
    case ErrorCode::unknown_model: return "unknown_model";
    case ErrorCode::unknown_cocycle: return "unknown_cocycle";
    case ErrorCode::invalid_json: return "invalid_json";
    case ErrorCode::invariant_failure: return "invariant_failure";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

}  // namespace liesymp
