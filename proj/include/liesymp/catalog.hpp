#pragma once

#include "liesymp/algebra.hpp"
#include "liesymp/cocycle.hpp"
#include "liesymp/group.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace liesymp {

struct NamedCocycle {
  std::string name;
  TwoCochain cochain;
};

/// Values the regression suite compares against computed results.
struct ModelExpectations {
  std::optional<std::size_t> h2_dim;
  std::map<std::string, Verdict> verdicts;
};

struct Model {
  std::string name;
  std::shared_ptr<const LieAlgebra> algebra;
  std::shared_ptr<const GroupChart> chart;  // may be null
  std::vector<NamedCocycle> cocycles;
  std::optional<ModelExpectations> expected;

  /// Throws Error(unknown_cocycle).
  const TwoCochain& cocycle(const std::string& name) const;
};

std::vector<std::string> list_models();
/// Throws Error(unknown_model).
Model get_model(const std::string& name);

/// Validates every invariant before returning. Bundle = algebra fields, chart
/// fields (optional) and "cocycles" in one object.
Model import_model(const nlohmann::json& bundle);
Model import_model_text(const std::string& text);

LieAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const LieAlgebra& algebra);
std::shared_ptr<const GroupChart> chart_from_json(const nlohmann::json& j, std::shared_ptr<const LieAlgebra> algebra);
nlohmann::json chart_to_json(const GroupChart& chart);
nlohmann::json model_to_json(const Model& model);

/// Scalar fields accept integers, floats or "p/q" strings.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& q);
TwoCochain cochain_from_json(const nlohmann::json& matrix, std::size_t n);
nlohmann::json cochain_to_json(const TwoCochain& c);

}  // namespace liesymp
