#include "liesymp/algebra.hpp"
#include "liesymp/catalog.hpp"
#include "liesymp/error.hpp"
#include "liesymp/sampling.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

using namespace liesymp;

namespace {

Rational to_q(const oracle::Q& q) { return Rational(static_cast<long>(q.numerator()), static_cast<long>(q.denominator())); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::usage;
}

oracle::Cochain dense(const TwoCochain& c) {
  oracle::Cochain out(c.dim(), std::vector<oracle::Q>(c.dim()));
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j)
      out[i][j] = oracle::Q(c(i, j).get_num().get_si(), c(i, j).get_den().get_si());
  return out;
}

TwoCochain random_cochain(Sampler& s, std::size_t n) {
  TwoCochain c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.set(i, j, Rational(static_cast<long>(s.index(9)) - 4));
  return c;
}

}  // namespace

TEST_CASE("catalog structure constants agree with the reference tables") {
  for (const auto& [name, table] : oracle::tables()) {
    const Model m = get_model(name);
    REQUIRE(m.algebra->dim() == table.n);
    for (std::size_t i = 0; i < table.n; ++i)
      for (std::size_t j = 0; j < table.n; ++j)
        for (std::size_t k = 0; k < table.n; ++k) CHECK(m.algebra->structure(i, j, k) == to_q(table.at(i, j, k)));
    CHECK(oracle::jacobi_residual(table) == oracle::Q(0));
    CHECK(m.algebra->jacobi_residual_exact() == 0);
  }
}

TEST_CASE("H2 matches the brute-force rank oracle") {
  for (const auto& [name, table] : oracle::tables()) {
    const oracle::Cohomology expected = oracle::h2(table);
    const CohomologyReport r = cohomology_h2(*get_model(name).algebra);
    INFO(name);
    CHECK(r.dim_cocycles == expected.cocycles);
    CHECK(r.dim_coboundaries == expected.coboundaries);
    CHECK(r.dim_h2 == expected.h2);
    CHECK(r.representatives.size() == r.dim_h2);
    for (const auto& rep : r.representatives) {
      CHECK(is_cocycle(*get_model(name).algebra, rep));
      CHECK_FALSE(is_coboundary(*get_model(name).algebra, rep));
    }
  }
}

TEST_CASE("d2 agrees with the oracle on random cochains and d2 d1 = 0") {
  Sampler s(7);
  for (const auto& [name, table] : oracle::tables()) {
    const auto a_algebra = get_model(name).algebra;
    const LieAlgebra& a = *a_algebra;
    const std::size_t n = a.dim();
    for (int trial = 0; trial < 100; ++trial) {
      RationalVector beta(n);
      for (auto& b : beta) b = Rational(static_cast<long>(s.index(11)) - 5, 1 + static_cast<long>(s.index(3)));
      CHECK(ce_d2(a, ce_d1(a, beta)).is_zero());

      const TwoCochain c = random_cochain(s, n);
      const ThreeCochain dc = ce_d2(a, c);
      const oracle::Cochain cd = dense(c);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) REQUIRE(dc(x, y, z) == to_q(oracle::d2(table, cd, x, y, z)));
    }
  }
}

TEST_CASE("d1 follows the sign convention: d beta on a bracket is minus beta of the bracket") {
  const auto se2_algebra = get_model("se2").algebra;
  const LieAlgebra& se2 = *se2_algebra;
  const TwoCochain c = ce_d1(se2, RationalVector{0, 0, 1});
  CHECK(c(0, 1) == -1);  // [J, P1] = P2
  CHECK(c(1, 0) == 1);
  CHECK(c(0, 2) == 0);
  CHECK(c(1, 2) == 0);
  CHECK(c == get_model("se2").cocycle("coboundary"));
}

TEST_CASE("coboundary witnesses reproduce the cochain") {
  const Model h = get_model("heisenberg3");
  const auto beta = is_coboundary(*h.algebra, h.cocycle("coboundary"));
  REQUIRE(beta);
  CHECK(ce_d1(*h.algebra, *beta) == h.cocycle("coboundary"));
  CHECK_FALSE(is_coboundary(*h.algebra, h.cocycle("e1e3")));

  const Model g = get_model("galilei_1_1");
  CHECK(is_cocycle(*g.algebra, g.cocycle("mass")));
  CHECK_FALSE(is_coboundary(*g.algebra, g.cocycle("mass")));
}

TEST_CASE("bracket tables are validated") {
  using V = std::vector<BracketEntry>;
  const std::vector<std::string> b3{"a", "b", "c"};
  auto term = [](std::size_t i, std::size_t j, std::size_t k, long c) {
    return BracketEntry{i, j, {BracketTerm{k, Rational(c)}}};
  };
  CHECK(code_of([&] { LieAlgebra("x", b3, V{term(1, 0, 2, 1)}); }) == ErrorCode::invalid_structure);
  CHECK(code_of([&] { LieAlgebra("x", b3, V{term(0, 1, 3, 1)}); }) == ErrorCode::invalid_structure);
  CHECK(code_of([&] { LieAlgebra("x", b3, V{term(0, 1, 2, 1), term(0, 1, 0, 1)}); }) ==
        ErrorCode::invalid_structure);
  // [a,b] = a, [a,c] = b: the cyclic sum on (a, b, c) is -b.
  CHECK(code_of([&] { LieAlgebra("x", b3, V{term(0, 1, 0, 1), term(0, 2, 1, 1)}); }) == ErrorCode::invalid_structure);
  oracle::Table t(3);
  t.put(0, 1, 0, 1);
  t.put(0, 2, 1, 1);
  CHECK(oracle::jacobi_residual(t) != oracle::Q(0));
  CHECK_FALSE(LieAlgebra::unchecked("x", b3, V{term(0, 1, 0, 1), term(0, 2, 1, 1)}).satisfies_jacobi());

  // Terms are merged and zeros dropped.
  const LieAlgebra merged("x", b3, V{BracketEntry{0, 1, {{2, Rational(1)}, {2, Rational(-1)}}}});
  CHECK(merged.brackets().empty());
}

TEST_CASE("skewness is checked exactly") {
  RationalMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = Rational(-1) + Rational(1, 1000000000);
  CHECK(code_of([&] { TwoCochain::from_matrix(m); }) == ErrorCode::not_skew);
  m(1, 0) = -1;
  CHECK_NOTHROW(TwoCochain::from_matrix(m));
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 1;
  CHECK(code_of([&] { TwoCochain::from_values(diag); }) == ErrorCode::not_skew);
}

TEST_CASE("central extensions reproduce the catalog algebras") {
  const Model plane = get_model("abelian2");
  const CentralExtension h = central_extend(*plane.algebra, plane.cocycle("area"));
  CHECK(h.extended.same_structure(*get_model("heisenberg3").algebra));

  const Model se2 = get_model("se2");
  const CentralExtension osc = central_extend(*se2.algebra, se2.cocycle("translations"));
  CHECK(osc.extended.same_structure(*get_model("oscillator").algebra));
  CHECK(osc.extended.basis_labels().back() == "Z");
  CHECK(osc.extended.satisfies_jacobi());
}

TEST_CASE("a zero cocycle adds a central generator and nothing else") {
  for (const auto& name : list_models()) {
    const auto a_algebra = get_model(name).algebra;
    const LieAlgebra& a = *a_algebra;
    const CentralExtension ext = central_extend(a, TwoCochain(a.dim()));
    const std::size_t n = a.dim();
    REQUIRE(ext.extended.dim() == n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t k = 0; k <= n; ++k) {
          const Rational expected = (i < n && j < n && k < n) ? a.structure(i, j, k) : Rational(0);
          CHECK(ext.extended.structure(i, j, k) == expected);
        }
  }
}

TEST_CASE("a mutated cochain that is not closed is rejected with its location") {
  const auto osc_algebra = get_model("oscillator").algebra;
  const LieAlgebra& osc = *osc_algebra;
  TwoCochain c(4);
  c.set(0, 3, Rational(1));  // c(J, Z) = 1
  CHECK_FALSE(is_cocycle(osc, c));
  try {
    central_extend(osc, c);
    FAIL("expected not_cocycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_cocycle);
    CHECK(std::string(e.what()).find("J") != std::string::npos);
  }
  CHECK_FALSE(extension_algebra_unchecked(osc, c).satisfies_jacobi());
}

TEST_CASE("floating mode makes the same decisions on clean input") {
  const std::string text = R"({"name": "h", "dim": 3, "basis": ["x", "y", "z"],
    "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "coef": 1.0}]}]})";
  const Model m = import_model_text(text);
  CHECK(m.algebra->mode() == ScalarMode::floating);
  const CohomologyReport r = cohomology_h2(*m.algebra);
  CHECK(r.dim_h2 == 2);
  CHECK(r.margin >= kRankMarginFactor);
}

TEST_CASE("bracket and cochain evaluation are exactly skew") {
  Sampler s(3);
  const auto sl2_algebra = get_model("sl2").algebra;
  const LieAlgebra& sl2 = *sl2_algebra;
  const TwoCochain c = get_model("sl2").cocycle("coboundary");
  for (int i = 0; i < 20; ++i) {
    const AlgebraVector x = s.algebra_vector(3);
    const AlgebraVector y = s.algebra_vector(3);
    CHECK((bracket(sl2, x, y).coeffs + bracket(sl2, y, x).coeffs).isZero(0.0));
    CHECK(c.evaluate(x, x) == 0.0);
    CHECK(c.evaluate(x, y) == -c.evaluate(y, x));
  }
}
