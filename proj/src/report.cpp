#include "liesymp/report.hpp"

#include "liesymp/orbit.hpp"
#include "liesymp/sampling.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace liesymp {

using nlohmann::json;

namespace {

constexpr const char* kModule = "cli";
constexpr const char* kVersion = "0.1.0";

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::usage, kModule, message); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON when the text looks like JSON, otherwise a file name.
json inline_or_file(const std::string& text, const char* what) {
  const bool looks_inline = !text.empty() && (text.front() == '[' || text.front() == '{');
  json j = json::parse(looks_inline ? text : read_file(text), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::invalid_json, kModule, std::string(what) + " is not valid JSON");
  return j;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json rational_vector_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

json rational_matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json path_json(const GroupPath& path) {
  json segs = json::array();
  for (const auto& s : path.segments) segs.push_back({{"X", vector_json(s.generator.coeffs)}, {"tau", s.duration}});
  return segs;
}

GroupPath path_from(const json& j, std::size_t n) {
  const json& segs = j.is_object() && j.contains("segments") ? j["segments"] : j;
  if (!segs.is_array()) throw Error(ErrorCode::invalid_json, kModule, "path must be a list of segments");
  GroupPath path;
  for (const auto& s : segs) {
    if (!s.is_object() || !s.contains("X") || !s["X"].is_array() || s["X"].size() != n)
      throw Error(ErrorCode::invalid_json, kModule, "each path segment needs \"X\" with " + std::to_string(n) + " entries");
    AlgebraVector x = AlgebraVector::zero(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!s["X"][k].is_number()) throw Error(ErrorCode::invalid_json, kModule, "path coefficients must be numbers");
      x.coeffs[static_cast<Eigen::Index>(k)] = s["X"][k].get<double>();
    }
    double tau = 1.0;
    if (s.contains("tau")) {
      if (!s["tau"].is_number()) throw Error(ErrorCode::invalid_json, kModule, "\"tau\" must be a number");
      tau = s["tau"].get<double>();
    }
    path.segments.push_back(PathSegment{std::move(x), tau});
  }
  return path;
}

std::shared_ptr<const GroupChart> require_chart(const Model& model) {
  if (!model.chart) throw Error(ErrorCode::chart_mismatch, kModule, "model '" + model.name + "' has no group chart");
  return model.chart;
}

ThetaEvaluator make_evaluator(const Model& model, const TwoCochain& c, const RunConfig& config) {
  QuadratureRule rule;
  rule.tol = config.quad_tol;
  return ThetaEvaluator(require_chart(model), c, rule);
}

RationalVector alpha_or_zero(const RunConfig& config, std::size_t n) {
  if (!config.alpha) return RationalVector(n);
  if (config.alpha->size() != n)
    throw Error(ErrorCode::dimension_mismatch, kModule, "--alpha needs " + std::to_string(n) + " entries");
  return *config.alpha;
}

json holonomy_json(const HolonomyReport& h) {
  json loops = json::array();
  for (const auto& l : h.loops) loops.push_back({{"delta", vector_json(l.delta.coeffs)}, {"norm", l.norm}});
  return {{"loops", std::move(loops)},
          {"verdict", to_string(h.verdict)},
          {"relative_to_declared_loops", h.relative_to_declared_loops}};
}

json residual_json(const ResidualReport& r) {
  return {{"max", r.residual}, {"relative", r.relative}, {"argmax", r.argmax}, {"samples", r.samples}};
}

std::vector<ElementPair> seeded_pairs(const GroupChart& chart, std::size_t count, std::uint64_t seed) {
  Sampler sampler(seed);
  const std::size_t n = chart.algebra().dim();
  std::vector<ElementPair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    GroupElement g1 = path_endpoint(chart, sampler.word(n));
    GroupElement g2 = path_endpoint(chart, sampler.word(n));
    pairs.emplace_back(std::move(g1), std::move(g2));
  }
  return pairs;
}

std::vector<NeebSample> seeded_neeb_samples(const GroupChart& chart, std::size_t count, std::uint64_t seed) {
  Sampler sampler(seed);
  const std::size_t n = chart.algebra().dim();
  std::vector<NeebSample> samples;
  for (std::size_t i = 0; i < count; ++i) {
    GroupElement g = path_endpoint(chart, sampler.word(n));
    AlgebraVector x = sampler.algebra_vector(n);
    AlgebraVector y = sampler.algebra_vector(n);
    samples.push_back(NeebSample{std::move(g), std::move(x), std::move(y)});
  }
  return samples;
}

std::vector<AlgebraVector> basis_directions(std::size_t n) {
  std::vector<AlgebraVector> dirs;
  for (std::size_t i = 0; i < n; ++i) dirs.push_back(AlgebraVector::basis(n, i));
  return dirs;
}

// Small integer covector so rational checks stay exact and readable.
RationalVector seeded_alpha(std::size_t n, std::uint64_t seed) {
  Sampler sampler(seed);
  RationalVector alpha(n);
  for (auto& a : alpha) a = Rational(std::lround(sampler.uniform(-3.0, 3.0)));
  return alpha;
}

bool form_skew(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

json orbit_json(const OrbitSample& orbit) {
  json out{{"kind", to_string(orbit.kind)},
           {"alpha", rational_vector_json(orbit.alpha)},
           {"orbit_dim", orbit.orbit_dim},
           {"form", rational_matrix_json(orbit.form)},
           {"pivots", orbit.pivots},
           {"kernel_aligned", orbit.kernel_aligned},
           {"nondegenerate", orbit.nondegenerate}};
  if (orbit.eta) out["eta"] = rational_to_json(*orbit.eta);
  return out;
}

// --- verbs -----------------------------------------------------------------

Report info(const RunConfig& config) {
  const Model model = load_model(config);
  json body{{"model", model.name}, {"definition", model_to_json(model)}};
  body["jacobi_residual"] = rational_to_json(model.algebra->jacobi_residual_exact());
  if (model.chart) {
    body["chart"] = {{"matrix_dim", model.chart->matrix_dim()},
                     {"loops", model.chart->loops().size()},
                     {"simply_connected", model.chart->simply_connected()},
                     {"canonical_paths", model.chart->has_canonical_paths()
                                             ? json(model.chart->canonical_strategy_id())
                                             : json(nullptr)},
                     {"faithfulness_residual", model.chart->faithfulness_residual()}};
  } else {
    body["chart"] = nullptr;
  }
  json cocycles = json::array();
  for (const auto& c : model.cocycles) {
    const auto beta = is_coboundary(*model.algebra, c.cochain, config.tol_rank);
    cocycles.push_back({{"name", c.name},
                        {"closed", is_cocycle(*model.algebra, c.cochain)},
                        {"coboundary_of", beta ? rational_vector_json(*beta) : json(nullptr)}});
  }
  body["cocycles"] = std::move(cocycles);
  return Report{std::move(body), exit_ok};
}

Report h2(const RunConfig& config) {
  const Model model = load_model(config);
  const CohomologyReport r = cohomology_h2(*model.algebra, config.tol_rank);
  json reps = json::array();
  for (const auto& c : r.representatives) reps.push_back(cochain_to_json(c));
  json body{{"model", model.name},
            {"dim_cocycles", r.dim_cocycles},
            {"dim_coboundaries", r.dim_coboundaries},
            {"dim_h2", r.dim_h2},
            {"representatives", std::move(reps)},
            {"mode", model.algebra->mode() == ScalarMode::exact ? "exact" : "floating"}};
  if (std::isfinite(r.margin)) body["rank_margin"] = r.margin;
  return Report{std::move(body), exit_ok};
}

Report extend(const RunConfig& config) {
  const Model model = load_model(config);
  const TwoCochain c = select_cocycle(model, config.cocycle);
  const CentralExtension ext = central_extend(*model.algebra, c);
  json matches = json::array();
  for (const auto& name : list_models()) {
    const Model other = get_model(name);
    if (other.algebra->dim() == ext.extended.dim() && other.algebra->same_structure(ext.extended))
      matches.push_back(name);
  }
  json body{{"model", model.name},
            {"cocycle", cochain_to_json(c)},
            {"extended", algebra_to_json(ext.extended)},
            {"central_generator", ext.extended.basis_labels().back()},
            {"matches_catalog", std::move(matches)}};
  return Report{std::move(body), exit_ok};
}

Report theta(const RunConfig& config) {
  const Model model = load_model(config);
  const TwoCochain c = select_cocycle(model, config.cocycle);
  const ThetaEvaluator ev = make_evaluator(model, c, config);
  const std::size_t n = model.algebra->dim();

  GroupPath path;
  const bool explicit_path = !config.path.empty();
  if (explicit_path) {
    path = path_from(inline_or_file(config.path, "--path"), n);
  } else {
    Sampler sampler(config.seed);
    path = sampler.word(n);
  }
  const GroupElement g = path_endpoint(ev.chart(), path);
  json body{{"model", model.name},
            {"cocycle", cochain_to_json(c)},
            {"path", path_json(path)},
            {"element", matrix_json(g.matrix())},
            {"verdict", to_string(ev.holonomy().verdict)},
            {"seed", config.seed}};
  body["theta_along_path"] = vector_json(theta_along_path(ev, path).coeffs);
  if (ev.obstructed()) {
    if (!explicit_path) throw Error(ErrorCode::obstructed, "cocycle", "theta is multivalued on this group; pass --path");
    body["theta"] = nullptr;
    return Report{std::move(body), exit_obstructed};
  }
  if (!ev.chart().has_canonical_paths()) {
    if (!explicit_path)
      throw Error(ErrorCode::no_canonical_path, "group", "chart supplies no canonical path strategy; pass --path");
    // Integrable, so the path value is theta(g) itself.
    body["theta"] = body["theta_along_path"];
    body["canonical_strategy"] = nullptr;
    return Report{std::move(body), exit_ok};
  }
  const Covector value = theta_at(ev, g);
  body["theta"] = vector_json(value.coeffs);
  body["canonical_strategy"] = ev.canonical_strategy_id();
  body["path_independence"] = (value.coeffs - theta_along_path(ev, path).coeffs).cwiseAbs().maxCoeff();
  return Report{std::move(body), ev.holonomy().verdict == Verdict::indeterminate ? int(exit_indeterminate) : int(exit_ok)};
}

Report neeb(const RunConfig& config) {
  const Model model = load_model(config);
  const TwoCochain c = select_cocycle(model, config.cocycle);
  const ThetaEvaluator ev = make_evaluator(model, c, config);
  const HolonomyReport& h = ev.holonomy();
  json body = holonomy_json(h);
  body["model"] = model.name;
  body["cocycle"] = cochain_to_json(c);
  body["tolerances"] = {{"obstruction_threshold", h.obstruction_threshold},
                        {"zero_tolerance", h.zero_tolerance},
                        {"quadrature", ev.rule().tol},
                        {"finite_difference_step", kFiniteDifferenceStep}};
  json residuals = json::object();
  if (h.verdict == Verdict::integrable && !ev.chart().has_canonical_paths()) {
    body["residuals_skipped"] = "chart has no canonical paths";
  } else if (h.verdict == Verdict::integrable) {
    residuals["neeb"] = residual_json(
        neeb_residual(ev, seeded_neeb_samples(ev.chart(), kVerifyNeebSamples, config.seed)));
    residuals["cocycle"] = residual_json(cocycle_residual(ev, seeded_pairs(ev.chart(), kVerifyPairs, config.seed)));
  }
  body["residuals"] = std::move(residuals);
  body["seed"] = config.seed;
  const int code = h.verdict == Verdict::obstructed      ? exit_obstructed
                   : h.verdict == Verdict::indeterminate ? exit_indeterminate
                                                         : exit_ok;
  return Report{std::move(body), code};
}

Report orbit(const RunConfig& config) {
  const Model model = load_model(config);
  const LieAlgebra& algebra = *model.algebra;
  const RationalVector alpha = alpha_or_zero(config, algebra.dim());
  const bool with_cocycle = !config.cocycle.empty();
  if (config.eta && !with_cocycle) usage("--eta needs --cocycle");
  std::optional<TwoCochain> c;
  if (with_cocycle) c = select_cocycle(model, config.cocycle);

  const OrbitSample sample = !c           ? kks_form(algebra, alpha, config.tol_rank)
                             : config.eta ? hat_orbit_form(algebra, *c, alpha, *config.eta, config.tol_rank)
                                          : affine_orbit_form(algebra, *c, alpha, config.tol_rank);
  json body = orbit_json(sample);
  body["model"] = model.name;
  json residuals{{"form_skew", form_skew(sample.form)}, {"rank_margin", sample.rank_margin}};
  if (c && !config.eta) residuals["hyperplane"] = rational_to_json(hyperplane_isomorphism_check(algebra, *c, alpha));

  if (model.chart) {
    const ThetaEvaluator ev = make_evaluator(model, c ? *c : TwoCochain(algebra.dim()), config);
    if (ev.obstructed()) {
      residuals["verdict"] = to_string(Verdict::obstructed);
    } else if (!ev.chart().has_canonical_paths()) {
      residuals["skipped"] = "chart has no canonical paths";
    } else {
      if (config.eta) {
        const HatCovector p{Covector(to_eigen(alpha)), config.eta->get_d()};
        const ResidualReport hr = hat_composition_residual(ev, p, kVerifyPairs, config.seed);
        residuals["hat_composition"] = residual_json(hr);
        residuals["hat_composition"]["conditioned"] = hr.conditioned;
      } else if (sample.nondegenerate) {
        const MomentCheckReport m = poisson_bracket_check(ev, alpha, kVerifyPairs, config.seed, kFiniteDifferenceStep,
                                                          config.tol_rank);
        residuals["poisson"] = m.poisson_residual;
        residuals["lifted"] = m.lifted_residual;
        residuals["lifted_exact"] = m.lifted_exact;
        residuals["self_bracket_exact"] = m.self_bracket_exact;
        if (m.equivariance_residual) residuals["equivariance"] = *m.equivariance_residual;
      }
    }
  }
  body["residuals"] = std::move(residuals);
  body["seed"] = config.seed;
  return Report{std::move(body), exit_ok};
}

// --- verify ----------------------------------------------------------------

class Checklist {
 public:
  void add(const std::string& name, bool pass, json detail = json::object()) {
    detail["name"] = name;
    detail["pass"] = pass;
    all_ &= pass;
    checks_.push_back(std::move(detail));
  }
  void bound(const std::string& name, double value, double tol) {
    add(name, std::isfinite(value) && value <= tol, {{"value", value}, {"tolerance", tol}});
  }
  // Errors raised inside a check fail that check instead of aborting the suite.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, false, {{"error", e.qualified_code()}, {"message", e.what()}});
    }
  }
  bool all() const { return all_; }
  json take() { return std::move(checks_); }

 private:
  json checks_ = json::array();
  bool all_ = true;
};

void verify_cocycle(Checklist& list, const Model& model, const NamedCocycle& named, const RunConfig& config) {
  const LieAlgebra& algebra = *model.algebra;
  const TwoCochain& c = named.cochain;
  const std::string p = named.name + ".";
  list.add(p + "closed", is_cocycle(algebra, c));

  const RationalVector alpha = seeded_alpha(algebra.dim(), config.seed);
  list.guarded(p + "affine_orbit", [&] {
    const OrbitSample orbit = affine_orbit_form(algebra, c, alpha, config.tol_rank);
    const bool even = orbit.orbit_dim % 2 == 0;
    list.add(p + "affine_orbit", form_skew(orbit.form) && even && orbit.kernel_aligned,
             {{"alpha", rational_vector_json(alpha)}, {"orbit_dim", orbit.orbit_dim}});
    const Rational diff = hyperplane_isomorphism_check(algebra, c, alpha);
    list.add(p + "hyperplane", diff == 0, {{"value", rational_to_json(diff)}});
  });

  if (!model.chart) return;
  list.guarded(p + "theta", [&] {
    const ThetaEvaluator ev = make_evaluator(model, c, config);
    const HolonomyReport& h = ev.holonomy();
    json detail{{"verdict", to_string(h.verdict)}};
    bool verdict_ok = h.verdict != Verdict::indeterminate;
    if (model.expected) {
      auto it = model.expected->verdicts.find(named.name);
      if (it != model.expected->verdicts.end()) {
        detail["expected"] = to_string(it->second);
        verdict_ok = h.verdict == it->second;
      }
    }
    list.add(p + "holonomy", verdict_ok, std::move(detail));

    const DerivativeCheck d = d_e_theta_check(ev, basis_directions(algebra.dim()));
    list.bound(p + "identity_derivative", d.residual(), kVerifyDerivativeTol);
    if (ev.obstructed()) return;
    if (!ev.chart().has_canonical_paths()) {
      list.add(p + "group_checks", true, {{"skipped", "chart has no canonical paths"}});
      return;
    }

    const ResidualReport r = cocycle_residual(ev, seeded_pairs(ev.chart(), kVerifyPairs, config.seed));
    list.bound(p + "cocycle_identity", r.relative, kVerifyCocycleTol);
    const ResidualReport nr = neeb_residual(ev, seeded_neeb_samples(ev.chart(), kVerifyNeebSamples, config.seed));
    list.bound(p + "neeb", nr.relative, kVerifyNeebTol);
    const HatCovector point{Covector(to_eigen(alpha)), 1.0};
    // Elements far from the identity lose digits to conditioning alone; the
    // conditioned residual is what measures composition up to rounding.
    const ResidualReport hr = hat_composition_residual(ev, point, kVerifyPairs, config.seed);
    list.add(p + "hat_composition", hr.conditioned <= kVerifyHatTol,
             {{"value", hr.conditioned}, {"relative", hr.relative}, {"max", hr.residual}, {"tolerance", kVerifyHatTol}});
  });
}

Report verify(const RunConfig& config) {
  const Model model = load_model(config);
  const LieAlgebra& algebra = *model.algebra;
  Checklist list;
  list.add("jacobi", algebra.jacobi_residual_exact() == 0 || algebra.satisfies_jacobi());
  if (model.chart) list.bound("faithfulness", model.chart->faithfulness_residual(), kFaithfulnessTol);

  list.guarded("h2", [&] {
    const CohomologyReport r = cohomology_h2(algebra, config.tol_rank);
    json detail{{"dim_h2", r.dim_h2}};
    bool ok = true;
    if (model.expected && model.expected->h2_dim) {
      detail["expected"] = *model.expected->h2_dim;
      ok = r.dim_h2 == *model.expected->h2_dim;
    }
    list.add("h2", ok, std::move(detail));
  });

  list.guarded("coadjoint_orbit", [&] {
    const RationalVector alpha = seeded_alpha(algebra.dim(), config.seed);
    const OrbitSample orbit = kks_form(algebra, alpha, config.tol_rank);
    list.add("coadjoint_orbit", form_skew(orbit.form) && orbit.orbit_dim % 2 == 0 && orbit.kernel_aligned,
             {{"alpha", rational_vector_json(alpha)}, {"orbit_dim", orbit.orbit_dim}});
  });

  for (const auto& named : model.cocycles) verify_cocycle(list, model, named, config);

  json body{{"model", model.name}, {"seed", config.seed}};
  const bool pass = list.all();
  body["checks"] = list.take();
  body["pass"] = pass;
  return Report{std::move(body), pass ? exit_ok : exit_invariant};
}

using VerbFn = Report (*)(const RunConfig&);

const std::map<std::string, VerbFn>& verb_table() {
  static const std::map<std::string, VerbFn> table{{"info", info},   {"h2", h2},         {"extend", extend},
                                                   {"theta", theta}, {"neeb", neeb},     {"orbit", orbit},
                                                   {"verify", verify}};
  return table;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> names{"info", "h2", "extend", "theta", "neeb", "orbit", "verify"};
  return names;
}

Model load_model(const RunConfig& config) {
  if (!config.file.empty()) return import_model_text(read_file(config.file));
  if (config.model.empty()) usage("one of --model or --file is required");
  return get_model(config.model);
}

TwoCochain select_cocycle(const Model& model, const std::string& selector) {
  if (selector.empty()) usage("--cocycle is required for this verb");
  for (const auto& c : model.cocycles)
    if (c.name == selector) return c.cochain;
  const bool looks_inline = selector.front() == '[' || selector.front() == '{';
  if (!looks_inline && !std::filesystem::exists(selector)) return model.cocycle(selector);
  json j = inline_or_file(selector, "--cocycle");
  const json& matrix = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
  return cochain_from_json(matrix, model.algebra->dim());
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::usage:
    case ErrorCode::unknown_model:
    case ErrorCode::unknown_cocycle:
    case ErrorCode::invalid_json:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::chart_mismatch:
    case ErrorCode::no_canonical_path:
      return exit_usage;
    case ErrorCode::obstructed:
      return exit_obstructed;
    case ErrorCode::indeterminate_rank:
      return exit_indeterminate;
    default:
      return exit_invariant;
  }
}

Report error_report(const Error& error) {
  return Report{{{"error", {{"code", error.qualified_code()}, {"message", error.what()}}}}, exit_code_for(error.code())};
}

Report run_verb(const std::string& verb, const RunConfig& config) {
  auto it = verb_table().find(verb);
  if (it == verb_table().end()) usage("unknown verb '" + verb + "'");
  if (!(config.tol_rank > 0.0) || !(config.quad_tol > 0.0)) usage("tolerance overrides must be positive");
  return it->second(config);
}

json wrap_report(const std::string& verb, const Report& report, const std::string& timestamp) {
  return {{"header", {{"tool", "liesymp"}, {"version", kVersion}, {"verb", verb}, {"timestamp", timestamp}}},
          {"body", report.body},
          {"exit_code", report.exit_code}};
}

}  // namespace liesymp
