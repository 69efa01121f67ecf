#include "liesymp/catalog.hpp"
#include "liesymp/orbit.hpp"
#include "liesymp/report.hpp"
#include "liesymp/sampling.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace liesymp;

namespace {

RationalVector rationals(const std::vector<std::string>& items) {
  RationalVector out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

std::shared_ptr<Model> load(const std::string& name) { return std::make_shared<Model>(get_model(name)); }

ThetaEvaluator evaluator(const Model& m, const std::string& cocycle) {
  if (!m.chart) throw Error(ErrorCode::chart_mismatch, "python", "model '" + m.name + "' has no group chart");
  return ThetaEvaluator(m.chart, m.cocycle(cocycle));
}

GroupPath path_from(const std::vector<std::pair<Eigen::VectorXd, double>>& segments) {
  GroupPath path;
  for (const auto& [x, tau] : segments) path.segments.push_back(PathSegment{AlgebraVector(x), tau});
  return path;
}

py::dict orbit_dict(const OrbitSample& o) {
  py::dict d;
  d["kind"] = to_string(o.kind);
  d["orbit_dim"] = o.orbit_dim;
  d["form"] = o.form_values();
  d["nondegenerate"] = o.nondegenerate;
  d["kernel_aligned"] = o.kernel_aligned;
  d["pivots"] = o.pivots;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lie algebra cocycles, group cocycles and affine coadjoint orbits";

  static py::exception<Error> error_type(m, "LiesympError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = e.qualified_code();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<LieAlgebra, std::shared_ptr<LieAlgebra>>(m, "LieAlgebra")
      .def(py::init([](std::string name, std::vector<std::string> basis,
                       std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::pair<std::size_t, std::string>>>>
                           brackets) {
             std::vector<BracketEntry> entries;
             for (const auto& [i, j, terms] : brackets) {
               BracketEntry e{i, j, {}};
               for (const auto& [k, coef] : terms) e.terms.push_back(BracketTerm{k, parse_rational(coef)});
               entries.push_back(std::move(e));
             }
             return std::make_shared<LieAlgebra>(std::move(name), std::move(basis), std::move(entries));
           }),
           py::arg("name"), py::arg("basis"), py::arg("brackets"),
           "brackets: list of (i, j, [(k, \"p/q\"), ...]) with i < j")
      .def_property_readonly("name", &LieAlgebra::name)
      .def_property_readonly("dim", &LieAlgebra::dim)
      .def_property_readonly("basis", &LieAlgebra::basis_labels)
      .def("structure", &LieAlgebra::structure_value)
      .def("jacobi_residual", &LieAlgebra::jacobi_residual)
      .def("same_structure", &LieAlgebra::same_structure)
      .def("h2", [](const LieAlgebra& a) {
        const CohomologyReport r = cohomology_h2(a);
        py::dict d;
        d["dim_cocycles"] = r.dim_cocycles;
        d["dim_coboundaries"] = r.dim_coboundaries;
        d["dim_h2"] = r.dim_h2;
        std::vector<Eigen::MatrixXd> reps;
        for (const auto& c : r.representatives) reps.push_back(c.values());
        d["representatives"] = reps;
        return d;
      })
      .def("is_cocycle", [](const LieAlgebra& a, const Eigen::MatrixXd& c) {
        return is_cocycle(a, TwoCochain::from_values(c));
      })
      .def("central_extend", [](const LieAlgebra& a, const Eigen::MatrixXd& c) {
        return std::make_shared<LieAlgebra>(central_extend(a, TwoCochain::from_values(c)).extended);
      })
      .def("coboundary", [](const LieAlgebra& a, const std::vector<std::string>& beta) {
        return ce_d1(a, rationals(beta)).values();
      })
      .def("kks_form", [](const LieAlgebra& a, const std::vector<std::string>& alpha) {
        return orbit_dict(kks_form(a, rationals(alpha)));
      })
      .def("affine_orbit_form", [](const LieAlgebra& a, const Eigen::MatrixXd& c, const std::vector<std::string>& alpha) {
        return orbit_dict(affine_orbit_form(a, TwoCochain::from_values(c), rationals(alpha)));
      })
      .def("hyperplane_check", [](const LieAlgebra& a, const Eigen::MatrixXd& c, const std::vector<std::string>& alpha) {
        return to_string(hyperplane_isomorphism_check(a, TwoCochain::from_values(c), rationals(alpha)));
      });

  py::class_<Model, std::shared_ptr<Model>>(m, "Model")
      .def_readonly("name", &Model::name)
      .def_property_readonly("algebra", [](const Model& mo) { return std::make_shared<LieAlgebra>(*mo.algebra); })
      .def_property_readonly("has_chart", [](const Model& mo) { return static_cast<bool>(mo.chart); })
      .def_property_readonly("cocycles", [](const Model& mo) {
        std::vector<std::string> names;
        for (const auto& c : mo.cocycles) names.push_back(c.name);
        return names;
      })
      .def("cocycle", [](const Model& mo, const std::string& name) { return mo.cocycle(name).values(); })
      .def("to_json", [](const Model& mo) { return model_to_json(mo).dump(); });

  m.def("list_models", &list_models);
  m.def("get_model", &load, py::arg("name"));
  m.def("import_model", [](const std::string& text) { return std::make_shared<Model>(import_model_text(text)); },
        py::arg("text"));

  m.def(
      "holonomy",
      [](const Model& mo, const std::string& cocycle) {
        const ThetaEvaluator ev = evaluator(mo, cocycle);
        py::dict d;
        std::vector<double> norms;
        for (const auto& l : ev.holonomy().loops) norms.push_back(l.norm);
        d["verdict"] = to_string(ev.holonomy().verdict);
        d["norms"] = norms;
        d["relative_to_declared_loops"] = ev.holonomy().relative_to_declared_loops;
        return d;
      },
      py::arg("model"), py::arg("cocycle"));

  m.def(
      "theta",
      [](const Model& mo, const std::string& cocycle, const std::vector<std::pair<Eigen::VectorXd, double>>& path,
         bool canonical) {
        const ThetaEvaluator ev = evaluator(mo, cocycle);
        const GroupPath p = path_from(path);
        if (!canonical) return Eigen::VectorXd(theta_along_path(ev, p).coeffs);
        return Eigen::VectorXd(theta_at(ev, path_endpoint(ev.chart(), p)).coeffs);
      },
      py::arg("model"), py::arg("cocycle"), py::arg("path"), py::arg("canonical") = true,
      "path: list of (X, tau) segments. canonical=True evaluates on the chart's canonical path to the endpoint.");

  m.def(
      "endpoint",
      [](const Model& mo, const std::vector<std::pair<Eigen::VectorXd, double>>& path) {
        if (!mo.chart) throw Error(ErrorCode::chart_mismatch, "python", "model has no group chart");
        return Eigen::MatrixXd(path_endpoint(*mo.chart, path_from(path)).matrix());
      },
      py::arg("model"), py::arg("path"));

  m.def(
      "cocycle_residual",
      [](const Model& mo, const std::string& cocycle, std::size_t pairs, std::uint64_t seed) {
        const ThetaEvaluator ev = evaluator(mo, cocycle);
        Sampler sampler(seed);
        const std::size_t n = mo.algebra->dim();
        std::vector<ElementPair> samples;
        for (std::size_t i = 0; i < pairs; ++i) {
          GroupElement g1 = path_endpoint(ev.chart(), sampler.word(n));
          GroupElement g2 = path_endpoint(ev.chart(), sampler.word(n));
          samples.emplace_back(std::move(g1), std::move(g2));
        }
        return cocycle_residual(ev, samples).residual;
      },
      py::arg("model"), py::arg("cocycle"), py::arg("pairs") = 100, py::arg("seed") = 0);

  m.def(
      "run",
      [](const std::string& verb, const std::string& model, const std::string& cocycle,
         std::optional<std::vector<std::string>> alpha, std::optional<std::string> eta, std::uint64_t seed) {
        RunConfig config;
        config.model = model;
        config.cocycle = cocycle;
        if (alpha) config.alpha = rationals(*alpha);
        if (eta) config.eta = parse_rational(*eta);
        config.seed = seed;
        Report r;
        try {
          r = run_verb(verb, config);
        } catch (const Error& e) {
          r = error_report(e);
        }
        return py::make_tuple(r.body.dump(), r.exit_code);
      },
      py::arg("verb"), py::arg("model"), py::arg("cocycle") = "", py::arg("alpha") = py::none(),
      py::arg("eta") = py::none(), py::arg("seed") = 0,
      "Runs a command-line verb; returns (report body as JSON text, exit code).");
}
