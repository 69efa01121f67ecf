#include "liesymp/catalog.hpp"
#include "liesymp/error.hpp"
#include "liesymp/group.hpp"
#include "liesymp/sampling.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace liesymp;
using Catch::Matchers::WithinAbs;

namespace {

AlgebraVector v3(double a, double b, double c) { return AlgebraVector(Eigen::Vector3d(a, b, c)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::usage;
}

}  // namespace

TEST_CASE("exponentials match closed forms") {
  const Model se2 = get_model("se2");
  const GroupElement half_turn = exp(*se2.chart, v3(std::numbers::pi, 0, 0));
  Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
  expected(0, 0) = expected(1, 1) = -1;
  CHECK((half_turn.matrix() - expected).norm() < 1e-14);

  // Nilpotent: exp(X) = I + X + X^2 / 2.
  const Model h = get_model("heisenberg3");
  const AlgebraVector x = v3(0.3, -1.7, 2.2);
  const Eigen::MatrixXd m = h.chart->embedding(x);
  const Eigen::MatrixXd closed = Eigen::MatrixXd::Identity(3, 3) + m + 0.5 * m * m;
  CHECK((exp(*h.chart, x).matrix() - closed).norm() < 1e-14);

  // sl2: exp(t H) = diag(e^t, e^-t).
  const Model sl2 = get_model("sl2");
  const GroupElement a = exp(*sl2.chart, v3(0.7, 0, 0));
  CHECK_THAT(a.matrix()(0, 0), WithinAbs(std::exp(0.7), 1e-14));
  CHECK_THAT(a.matrix()(1, 1), WithinAbs(std::exp(-0.7), 1e-14));
}

TEST_CASE("the loops of the non-simply-connected charts close") {
  for (const auto& name : {"torus2", "se2", "sl2"}) {
    const Model m = get_model(name);
    REQUIRE_FALSE(m.chart->simply_connected());
    REQUIRE_FALSE(m.chart->loops().empty());
    for (const auto& loop : m.chart->loops()) {
      const Eigen::MatrixXd end = path_endpoint(*m.chart, loop).matrix();
      CHECK((end - Eigen::MatrixXd::Identity(end.rows(), end.cols())).norm() < 1e-12);
    }
  }
  const Model cover = get_model("se2_cover");
  CHECK(cover.chart->simply_connected());
  const Eigen::MatrixXd lifted = exp(*cover.chart, v3(2 * std::numbers::pi, 0, 0)).matrix();
  CHECK((lifted - Eigen::MatrixXd::Identity(5, 5)).norm() > 1.0);
}

TEST_CASE("canonical paths end at the element they decompose") {
  Sampler s(11);
  for (const auto& name : list_models()) {
    const Model m = get_model(name);
    if (!m.chart) continue;
    INFO(name);
    REQUIRE(m.chart->has_canonical_paths());
    for (int i = 0; i < 50; ++i) {
      const GroupElement g = path_endpoint(*m.chart, s.word(m.algebra->dim()));
      const GroupElement back = path_endpoint(*m.chart, m.chart->canonical_path(g));
      const double scale = std::max(1.0, g.matrix().norm());
      CHECK((back.matrix() - g.matrix()).norm() / scale < 1e-10);
    }
  }
}

TEST_CASE("Ad and Coad are actions and Ad(exp X) fixes X") {
  Sampler s(5);
  for (const auto& name : {"se2", "heisenberg3", "galilei_1_1", "sl2"}) {
    const Model m = get_model(name);
    const GroupChart& chart = *m.chart;
    for (int i = 0; i < 20; ++i) {
      const GroupElement g1 = exp(chart, s.algebra_vector(3));
      const GroupElement g2 = exp(chart, s.algebra_vector(3));
      const Eigen::MatrixXd a12 = adjoint_matrix(chart, compose(chart, g1, g2));
      CHECK((a12 - adjoint_matrix(chart, g1) * adjoint_matrix(chart, g2)).norm() < 1e-10 * std::max(1.0, a12.norm()));
      const Eigen::MatrixXd c12 = coadjoint_matrix(chart, compose(chart, g1, g2));
      CHECK((c12 - coadjoint_matrix(chart, g1) * coadjoint_matrix(chart, g2)).norm() <
            1e-10 * std::max(1.0, c12.norm()));

      const AlgebraVector x = s.algebra_vector(3);
      CHECK((Ad(chart, exp(chart, x), x).coeffs - x.coeffs).norm() < 1e-12);
      const Covector alpha = s.covector(3);
      // <Coad(g, alpha), Ad(g, X)> = <alpha, X>
      CHECK_THAT(pairing(Coad(chart, g1, alpha), Ad(chart, g1, x)), WithinAbs(pairing(alpha, x), 1e-10));
    }
    const Covector alpha = s.covector(3);
    CHECK(Coad(chart, chart.identity(), alpha).coeffs == alpha.coeffs);
  }
}

TEST_CASE("path algebra: reversal inverts and normalization keeps endpoints") {
  Sampler s(2);
  const Model m = get_model("galilei_1_1");
  const GroupChart& chart = *m.chart;
  for (int i = 0; i < 10; ++i) {
    GroupPath p = s.word(3);
    p.segments.front().duration = 0.5;
    const Eigen::MatrixXd g = path_endpoint(chart, p).matrix();
    CHECK((path_endpoint(chart, p.normalized()).matrix() - g).norm() < 1e-12);
    CHECK(std::abs(p.normalized().total_duration() - 1.0) < 1e-15);
    CHECK((path_endpoint(chart, p.reversed()).matrix() * g - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    const GroupPath q = s.word(3);
    CHECK((path_endpoint(chart, p.then(q)).matrix() - g * path_endpoint(chart, q).matrix()).norm() < 1e-12);
  }
}

TEST_CASE("charts validate faithfulness, independence and membership") {
  auto se2 = get_model("se2");
  const auto& e = se2.chart->embed();
  // Swapping P1 and P2 breaks [J, P1] = P2.
  CHECK(code_of([&] {
          GroupChart(se2.algebra, {e[0], e[2], e[1]}, {}, true);
        }) == ErrorCode::invalid_structure);
  CHECK(code_of([&] {
          GroupChart(se2.algebra, {e[0], e[1], e[1]}, {}, true);
        }) == ErrorCode::invalid_structure);
  CHECK(code_of([&] {
          GroupChart(se2.algebra, {e[0], e[1]}, {}, true);
        }) == ErrorCode::dimension_mismatch);
  Eigen::MatrixXd bad = e[1];
  bad(0, 0) = std::nan("");
  CHECK(code_of([&] {
          GroupChart(se2.algebra, {e[0], bad, e[2]}, {}, true);
        }) == ErrorCode::non_finite);

  Eigen::MatrixXd outside = Eigen::MatrixXd::Zero(3, 3);
  outside(2, 0) = 1.0;
  CHECK(code_of([&] { se2.chart->coordinates(outside); }) == ErrorCode::left_embedded_algebra);
  CHECK(code_of([&] { exp(*se2.chart, v3(std::nan(""), 0, 0)); }) == ErrorCode::non_finite);

  const Model other = get_model("se2");
  CHECK(code_of([&] { compose(*se2.chart, se2.chart->identity(), other.chart->identity()); }) ==
        ErrorCode::chart_mismatch);
}
