#include "liesymp/catalog.hpp"

#include "liesymp/error.hpp"

#include <cmath>

namespace liesymp {

using nlohmann::json;

namespace {

constexpr const char* kModule = "catalog";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::invalid_json, kModule, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where + "." + key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite value");
  return v;
}

Rational scalar(const json& j, const std::string& where, bool& saw_float) {
  if (j.is_number_float()) saw_float = true;
  try {
    return rational_from_json(j);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Eigen::MatrixXd square_matrix(const json& j, std::size_t m, const std::string& where) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() == m * m && (m == 0 || !j[0].is_array())) {
    for (std::size_t k = 0; k < m * m; ++k)
      out(static_cast<Eigen::Index>(k / m), static_cast<Eigen::Index>(k % m)) =
          number(j[k], where + "[" + std::to_string(k) + "]");
    return out;
  }
  if (j.size() != m) fail(where, "expected " + std::to_string(m) + " rows");
  for (std::size_t r = 0; r < m; ++r) {
    const std::string row_at = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != m) fail(row_at, "expected " + std::to_string(m) + " entries");
    for (std::size_t c = 0; c < m; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number(j[r][c], row_at + "[" + std::to_string(c) + "]");
  }
  return out;
}

GroupPath path_from_json(const json& j, std::size_t n, const std::string& where) {
  const json& segs = field(j, "segments", where);
  if (!segs.is_array()) fail(where + ".segments", "expected an array");
  GroupPath path;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const std::string at = where + ".segments[" + std::to_string(s) + "]";
    const json& x = field(segs[s], "X", at);
    if (!x.is_array() || x.size() != n) fail(at + ".X", "expected " + std::to_string(n) + " coefficients");
    AlgebraVector v = AlgebraVector::zero(n);
    for (std::size_t k = 0; k < n; ++k)
      v.coeffs[static_cast<Eigen::Index>(k)] = number(x[k], at + ".X[" + std::to_string(k) + "]");
    const double tau = segs[s].contains("tau") ? number(segs[s]["tau"], at + ".tau") : 1.0;
    path.segments.push_back(PathSegment{std::move(v), tau});
  }
  return path;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Errors raised by the validating constructors get the JSON location prefixed.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), e.module(), where + ": " + e.what());
  }
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>() >= 0 ? std::to_string(j.get<unsigned long long>())
                                                                     : std::to_string(j.get<long long>()));
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::non_finite, kModule, "non-finite scalar");
    return rational_from_double(v);
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_json, kModule, "cannot parse '" + j.get<std::string>() + "' as a rational");
    }
  }
  throw Error(ErrorCode::invalid_json, kModule, "scalar must be a number or a \"p/q\" string");
}

json rational_to_json(const Rational& q) { return to_string(q); }

LieAlgebra algebra_from_json(const json& j) {
  const json& name = field(j, "name", "$");
  if (!name.is_string()) fail("$.name", "expected a string");
  const json& basis = field(j, "basis", "$");
  if (!basis.is_array()) fail("$.basis", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_string()) fail("$.basis[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(basis[i].get<std::string>());
  }
  if (j.contains("dim") && index_field(j, "dim", "$") != labels.size())
    fail("$.dim", "does not match the number of basis labels");

  bool saw_float = false;
  std::vector<BracketEntry> entries;
  const json& brackets = j.contains("brackets") ? j["brackets"] : json::array();
  if (!brackets.is_array()) fail("$.brackets", "expected an array");
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string at = "$.brackets[" + std::to_string(b) + "]";
    BracketEntry e{index_field(brackets[b], "i", at), index_field(brackets[b], "j", at), {}};
    const json& terms = field(brackets[b], "terms", at);
    if (!terms.is_array()) fail(at + ".terms", "expected an array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tat = at + ".terms[" + std::to_string(t) + "]";
      e.terms.push_back(BracketTerm{index_field(terms[t], "k", tat), scalar(field(terms[t], "coef", tat), tat + ".coef", saw_float)});
    }
    entries.push_back(std::move(e));
  }
  const ScalarMode mode = saw_float ? ScalarMode::floating : ScalarMode::exact;
  return located("$.brackets", [&] {
    return LieAlgebra(name.get<std::string>(), std::move(labels), std::move(entries), mode);
  });
}

json algebra_to_json(const LieAlgebra& algebra) {
  json brackets = json::array();
  for (const auto& e : algebra.brackets()) {
    json terms = json::array();
    for (const auto& t : e.terms) terms.push_back({{"k", t.k}, {"coef", rational_to_json(t.coef)}});
    brackets.push_back({{"i", e.i}, {"j", e.j}, {"terms", std::move(terms)}});
  }
  return {{"name", algebra.name()},
          {"dim", algebra.dim()},
          {"basis", algebra.basis_labels()},
          {"brackets", std::move(brackets)}};
}

std::shared_ptr<const GroupChart> chart_from_json(const json& j, std::shared_ptr<const LieAlgebra> algebra) {
  if (j.contains("algebra")) {
    if (!j["algebra"].is_string()) fail("$.algebra", "expected the algebra name");
    if (j["algebra"].get<std::string>() != algebra->name())
      fail("$.algebra", "refers to '" + j["algebra"].get<std::string>() + "', not '" + algebra->name() + "'");
  }
  const json& embed = field(j, "embed", "$");
  if (!embed.is_array() || embed.size() != algebra->dim())
    fail("$.embed", "expected " + std::to_string(algebra->dim()) + " matrices");
  // Nested rows give the size away; flat matrices need it spelled out.
  std::size_t m = 0;
  if (j.contains("matrix_dim"))
    m = index_field(j, "matrix_dim", "$");
  else if (!embed.empty() && embed[0].is_array() && !embed[0].empty() && embed[0][0].is_array())
    m = embed[0].size();
  else
    fail("$.matrix_dim", "required when embed matrices are flat");
  if (m == 0) fail("$.matrix_dim", "must be positive");
  std::vector<Eigen::MatrixXd> matrices;
  for (std::size_t i = 0; i < embed.size(); ++i)
    matrices.push_back(square_matrix(embed[i], m, "$.embed[" + std::to_string(i) + "]"));

  std::vector<GroupPath> loops;
  if (j.contains("loops")) {
    if (!j["loops"].is_array()) fail("$.loops", "expected an array");
    for (std::size_t l = 0; l < j["loops"].size(); ++l)
      loops.push_back(path_from_json(j["loops"][l], algebra->dim(), "$.loops[" + std::to_string(l) + "]"));
  }
  bool simply_connected = false;
  if (j.contains("simply_connected")) {
    if (!j["simply_connected"].is_boolean()) fail("$.simply_connected", "expected a boolean");
    simply_connected = j["simply_connected"].get<bool>();
  }
  const double tol = j.contains("membership_tol") ? number(j["membership_tol"], "$.membership_tol")
                                                  : kDefaultMembershipTol;
  return located("$.embed", [&] {
    return std::make_shared<const GroupChart>(algebra, std::move(matrices), std::move(loops), simply_connected, tol);
  });
}

json chart_to_json(const GroupChart& chart) {
  json embed = json::array();
  for (const auto& e : chart.embed()) embed.push_back(matrix_to_json(e));
  json loops = json::array();
  for (const auto& loop : chart.loops()) {
    json segs = json::array();
    for (const auto& s : loop.segments) {
      json x = json::array();
      for (Eigen::Index k = 0; k < s.generator.coeffs.size(); ++k) x.push_back(s.generator.coeffs[k]);
      segs.push_back({{"X", std::move(x)}, {"tau", s.duration}});
    }
    loops.push_back({{"segments", std::move(segs)}});
  }
  return {{"algebra", chart.algebra().name()},
          {"matrix_dim", chart.matrix_dim()},
          {"embed", std::move(embed)},
          {"loops", std::move(loops)},
          {"simply_connected", chart.simply_connected()}};
}

TwoCochain cochain_from_json(const json& matrix, std::size_t n) {
  if (!matrix.is_array() || matrix.size() != n) fail("matrix", "expected " + std::to_string(n) + " rows");
  RationalMatrix m(n, n);
  bool saw_float = false;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string at = "matrix[" + std::to_string(r) + "]";
    if (!matrix[r].is_array() || matrix[r].size() != n) fail(at, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar(matrix[r][c], at + "[" + std::to_string(c) + "]", saw_float);
  }
  return TwoCochain::from_matrix(m);
}

json cochain_to_json(const TwoCochain& c) {
  json rows = json::array();
  for (std::size_t r = 0; r < c.dim(); ++r) {
    json row = json::array();
    for (std::size_t k = 0; k < c.dim(); ++k) row.push_back(rational_to_json(c(r, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Model import_model(const json& bundle) {
  auto algebra = std::make_shared<const LieAlgebra>(algebra_from_json(bundle));
  std::shared_ptr<const GroupChart> chart;
  if (bundle.contains("embed")) chart = chart_from_json(bundle, algebra);

  Model model{algebra->name(), algebra, chart, {}, std::nullopt};
  if (bundle.contains("cocycles")) {
    const json& list = bundle["cocycles"];
    if (!list.is_array()) fail("$.cocycles", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "$.cocycles[" + std::to_string(i) + "]";
      const json& name = field(list[i], "name", at);
      if (!name.is_string()) fail(at + ".name", "expected a string");
      TwoCochain c = located(at, [&] { return cochain_from_json(field(list[i], "matrix", at), algebra->dim()); });
      if (!is_cocycle(*algebra, c))
        throw Error(ErrorCode::not_cocycle, kModule, at + " ('" + name.get<std::string>() + "') is not closed");
      model.cocycles.push_back(NamedCocycle{name.get<std::string>(), std::move(c)});
    }
  }
  return model;
}

Model import_model_text(const std::string& text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) fail("$", "not valid JSON");
  return import_model(parsed);
}

json model_to_json(const Model& model) {
  json out = algebra_to_json(*model.algebra);
  if (model.chart) out.update(chart_to_json(*model.chart));
  json list = json::array();
  for (const auto& c : model.cocycles) list.push_back({{"name", c.name}, {"matrix", cochain_to_json(c.cochain)}});
  out["cocycles"] = std::move(list);
  return out;
}

}  // namespace liesymp
