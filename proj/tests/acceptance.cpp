// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracle.hpp"

#include "liesymp/catalog.hpp"
#include "liesymp/cocycle.hpp"
#include "liesymp/error.hpp"
#include "liesymp/orbit.hpp"
#include "liesymp/sampling.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace liesymp;

namespace {

constexpr double kHolonomyTol = 1e-8;
constexpr double kCocycleTol = 1e-8;
constexpr double kNeebTol = 1e-6;
constexpr double kNeebStep = 1e-4;
constexpr double kDerivativeTol = 1e-8;
constexpr double kHatTol = 1e-8;
constexpr double kPoissonTol = 1e-5;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

struct CliRun {
  int exit_code = -1;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  CliRun out;
  const std::string command = std::string(LIESYMP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.output.append(buffer, n);
  const int status = pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Rational to_rational(const oracle::Q& q) { return Rational(static_cast<long>(q.numerator()), static_cast<long>(q.denominator())); }

RationalVector seeded_alpha(Sampler& s, std::size_t n) {
  RationalVector alpha(n);
  for (auto& a : alpha) a = Rational(static_cast<long>(s.index(7)) - 3, 1 + static_cast<long>(s.index(3)));
  return alpha;
}

std::vector<ElementPair> seeded_pairs(const GroupChart& chart, std::size_t count, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<ElementPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    GroupElement a = path_endpoint(chart, s.word(chart.algebra().dim()));
    GroupElement b = path_endpoint(chart, s.word(chart.algebra().dim()));
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

bool skew(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

void cohomology_oracle(Outcome& o) {
  const std::vector<std::pair<std::string, std::size_t>> expected{
      {"abelian2", 1}, {"heisenberg3", 2}, {"sl2", 0}, {"se2", 1}};
  const auto tables = oracle::tables();
  for (const auto& [name, dim] : expected) {
    const oracle::Table& t = tables.at(name);
    const auto a_algebra = get_model(name).algebra;
    const LieAlgebra& a = *a_algebra;
    bool same = a.dim() == t.n;
    for (std::size_t i = 0; same && i < t.n; ++i)
      for (std::size_t j = 0; j < t.n; ++j)
        for (std::size_t k = 0; k < t.n; ++k)
          if (a.structure(i, j, k) != to_rational(t.at(i, j, k))) same = false;
    o.require(same, name + " structure constants differ from the oracle table");
    const std::size_t brute = oracle::h2(t).h2;
    const std::size_t library = cohomology_h2(a).dim_h2;
    o.detail << " " << name << "=" << library;
    o.require(brute == dim, name + " oracle gives " + std::to_string(brute));
    o.require(library == brute, name + " library gives " + std::to_string(library));
  }
}

void extension_correctness(Outcome& o) {
  const Model plane = get_model("abelian2");
  o.require(central_extend(*plane.algebra, plane.cocycle("area")).extended.same_structure(*get_model("heisenberg3").algebra),
            "abelian2/area does not give heisenberg3");

  const Model se2 = get_model("se2");
  TwoCochain c(3);
  c.set(1, 2, Rational(1));
  o.require(central_extend(*se2.algebra, c).extended.same_structure(*get_model("oscillator").algebra),
            "se2/c(P1,P2)=1 does not give the oscillator");

  // c(J, Z) = 1 on the oscillator: (dc)(J, P1, P2) = -c([P1, P2], J) = 1.
  const Model osc = get_model("oscillator");
  TwoCochain open(4);
  open.set(0, 3, Rational(1));
  o.require(!extension_algebra_unchecked(*osc.algebra, open).satisfies_jacobi(),
            "unchecked extension by a non-closed cochain satisfies Jacobi");
  bool rejected = false;
  try {
    central_extend(*osc.algebra, open);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::not_cocycle;
  }
  o.require(rejected, "central_extend accepted a non-closed cochain");
}

void integrability_trichotomy(Outcome& o) {
  const Model torus = get_model("torus2");
  const HolonomyReport& th = ThetaEvaluator(torus.chart, torus.cocycle("area")).holonomy();
  o.require(th.verdict == Verdict::obstructed, "torus2 not obstructed");
  for (const auto& loop : th.loops) {
    o.detail << " torus|dtheta|=" << loop.norm;
    o.require(std::abs(loop.norm - 1.0) <= kHolonomyTol, "torus2 loop holonomy is not 1");
  }
  o.require(!th.loops.empty(), "torus2 has no loops");

  const Model plane = get_model("abelian2");
  o.require(ThetaEvaluator(plane.chart, plane.cocycle("area")).holonomy().verdict == Verdict::integrable,
            "abelian2 not integrable");

  const Model se2 = get_model("se2");
  const HolonomyReport& sh = ThetaEvaluator(se2.chart, se2.cocycle("translations")).holonomy();
  o.require(sh.verdict == Verdict::integrable, "se2 not integrable");
  for (const auto& loop : sh.loops) {
    o.detail << " se2|dtheta|=" << loop.norm;
    o.require(loop.norm <= kHolonomyTol, "se2 loop holonomy exceeds 1e-8");
  }

  const int torus_exit = run_cli("neeb --model torus2 --cocycle area").exit_code;
  const int plane_exit = run_cli("neeb --model abelian2 --cocycle area").exit_code;
  const int se2_exit = run_cli("neeb --model se2 --cocycle translations").exit_code;
  o.detail << " exits " << torus_exit << "/" << plane_exit << "/" << se2_exit;
  o.require(torus_exit == 2 && plane_exit == 0 && se2_exit == 0, "CLI exit codes are not 2/0/0");
}

void cocycle_identity(Outcome& o) {
  for (const auto& [model, cocycle] : std::vector<std::pair<std::string, std::string>>{
           {"abelian2", "area"}, {"se2", "translations"}, {"heisenberg3", "e1e3"}, {"galilei_1_1", "mass"}}) {
    const Model m = get_model(model);
    const ThetaEvaluator ev(m.chart, m.cocycle(cocycle));
    const ResidualReport r = cocycle_residual(ev, seeded_pairs(*m.chart, 100, 0));
    o.detail << " " << model << "=" << r.residual;
    o.require(r.samples == 100 && r.residual <= kCocycleTol, model + " cocycle residual");
  }
}

void neeb(Outcome& o) {
  for (const auto& [model, cocycle] :
       std::vector<std::pair<std::string, std::string>>{{"se2", "translations"}, {"galilei_1_1", "mass"}}) {
    const Model m = get_model(model);
    const ThetaEvaluator ev(m.chart, m.cocycle(cocycle));
    Sampler s(0);
    std::vector<NeebSample> samples;
    for (int i = 0; i < 50; ++i) {
      GroupElement g = path_endpoint(*m.chart, s.word(3));
      AlgebraVector x = s.algebra_vector(3), y = s.algebra_vector(3);
      samples.push_back(NeebSample{std::move(g), std::move(x), std::move(y)});
    }
    const ResidualReport r = neeb_residual(ev, samples, kNeebStep);
    o.detail << " " << model << "=" << r.residual;
    o.require(r.residual <= kNeebTol, model + " Neeb residual");
  }
}

void identity_derivative(Outcome& o) {
  double worst_dev = 0, worst_skew = 0;
  std::size_t pairs = 0;
  for (const auto& name : list_models()) {
    const Model m = get_model(name);
    if (!m.chart) continue;
    for (const auto& named : m.cocycles) {
      const ThetaEvaluator ev(m.chart, named.cochain);
      if (ev.holonomy().verdict == Verdict::obstructed) continue;
      const std::size_t n = m.algebra->dim();
      std::vector<AlgebraVector> dirs;
      for (std::size_t i = 0; i < n; ++i) dirs.push_back(AlgebraVector::basis(n, i));
      Sampler s(1);
      for (int i = 0; i < 3; ++i) dirs.push_back(s.algebra_vector(n));
      const DerivativeCheck d = d_e_theta_check(ev, dirs);
      worst_dev = std::max(worst_dev, d.derivative_deviation);
      worst_skew = std::max(worst_skew, d.skewness);
      o.require(d.derivative_deviation <= kDerivativeTol, name + "/" + named.name + " derivative");
      o.require(d.skewness <= kDerivativeTol, name + "/" + named.name + " skewness");
      ++pairs;
    }
  }
  o.detail << " pairs=" << pairs << " deviation=" << worst_dev << " skewness=" << worst_skew;
}

void orbit_geometry(Outcome& o) {
  const OrbitSample h = kks_form(*get_model("heisenberg3").algebra, RationalVector{0, 0, 1});
  o.require(h.orbit_dim == 2, "heisenberg3 orbit_dim");
  o.require(h.form(0, 1) == 1, "heisenberg3 form entry");

  for (long r : {1L, 2L, -3L}) {
    const OrbitSample s = kks_form(*get_model("se2").algebra, RationalVector{0, r, 0});
    o.require(s.orbit_dim == 2 && s.nondegenerate, "se2 orbit at r P1* with r=" + std::to_string(r));
  }

  Sampler s(7);
  std::size_t forms = 0;
  for (const auto& name : list_models()) {
    const Model m = get_model(name);
    for (int i = 0; i < 10; ++i) {
      const RationalVector alpha = seeded_alpha(s, m.algebra->dim());
      std::vector<OrbitSample> samples{kks_form(*m.algebra, alpha)};
      for (const auto& named : m.cocycles) samples.push_back(affine_orbit_form(*m.algebra, named.cochain, alpha));
      for (const auto& sample : samples) {
        o.require(skew(sample.form), name + " form not skew");
        o.require(sample.form.rank() % 2 == 0 && sample.orbit_dim % 2 == 0, name + " odd rank");
        ++forms;
      }
    }
  }
  o.detail << " forms=" << forms;
}

void affine_hat(Outcome& o) {
  Sampler s(8);
  std::size_t fixtures = 0;
  for (const auto& name : list_models()) {
    const Model m = get_model(name);
    for (const auto& named : m.cocycles)
      for (int i = 0; i < 5; ++i) {
        const Rational value = hyperplane_isomorphism_check(*m.algebra, named.cochain, seeded_alpha(s, m.algebra->dim()));
        o.require(value == 0, name + "/" + named.name + " hyperplane check");
        ++fixtures;
      }
  }
  o.detail << " hyperplane fixtures=" << fixtures;

  for (const auto& [model, cocycle] : std::vector<std::pair<std::string, std::string>>{
           {"abelian2", "area"}, {"se2", "translations"}, {"heisenberg3", "e1e3"}, {"galilei_1_1", "mass"}}) {
    const Model m = get_model(model);
    const ThetaEvaluator ev(m.chart, m.cocycle(cocycle));
    Sampler t(9);
    const HatCovector p{t.covector(m.algebra->dim()), 0.7};
    bool kept = true;
    for (int i = 0; i < 20; ++i) {
      const HatCovector q = hat_coadjoint(ev, path_endpoint(*m.chart, t.word(m.algebra->dim())), p);
      kept = kept && std::memcmp(&q.eta, &p.eta, sizeof(double)) == 0;
    }
    o.require(kept, model + " eta changed");
    try {
      const ResidualReport r = hat_composition_residual(ev, p, 100, 0);
      o.detail << " " << model << "=" << r.residual;
      o.require(r.residual <= kHatTol, model + " hat composition");
    } catch (const Error& e) {
      o.require(false, model + " " + e.what());
    }
  }
}

void poisson(Outcome& o) {
  const Model plane = get_model("abelian2");
  const MomentCheckReport a =
      poisson_bracket_check(ThetaEvaluator(plane.chart, plane.cocycle("area")), RationalVector{0, 0}, 100, 0);
  o.detail << " abelian2=" << a.poisson_residual;
  o.require(a.poisson_residual <= kPoissonTol, "abelian2 Poisson residual");
  o.require(a.self_bracket_exact, "abelian2 X=Y not exactly 0");

  const Model h = get_model("heisenberg3");
  const MomentCheckReport b =
      poisson_bracket_check(ThetaEvaluator(h.chart, TwoCochain(3)), RationalVector{0, 0, 1}, 100, 0);
  o.detail << " heisenberg3=" << b.poisson_residual;
  o.require(b.poisson_residual <= kPoissonTol, "heisenberg3 Poisson residual");
  o.require(b.self_bracket_exact, "heisenberg3 X=Y not exactly 0");
}

void determinism(Outcome& o) {
  for (const auto& model : list_models()) {
    const std::string args = "verify --model " + model + " --seed 42";
    const CliRun first = run_cli(args);
    const CliRun second = run_cli(args);
    try {
      const auto one = nlohmann::json::parse(first.output);
      const auto two = nlohmann::json::parse(second.output);
      o.require(one.at("body").dump() == two.at("body").dump(), model + " bodies differ");
      o.require(first.exit_code == 0 && second.exit_code == 0, model + " verify exit " + std::to_string(first.exit_code));
    } catch (const std::exception& e) {
      o.require(false, model + " unparsable output: " + e.what());
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"cohomology oracle equivalence", cohomology_oracle},
      {"extension correctness", extension_correctness},
      {"integrability trichotomy", integrability_trichotomy},
      {"cocycle identity", cocycle_identity},
      {"Neeb residual", neeb},
      {"identity derivative", identity_derivative},
      {"orbit geometry", orbit_geometry},
      {"affine/hat consistency", affine_hat},
      {"Poisson identity", poisson},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -"
              << o.detail.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
