#include "liesymp/catalog.hpp"

#include "liesymp/error.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace liesymp {

namespace {

constexpr const char* kModule = "catalog";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

BracketEntry entry(std::size_t i, std::size_t j, std::vector<std::pair<std::size_t, long>> terms) {
  BracketEntry e{i, j, {}};
  for (auto [k, coef] : terms) e.terms.push_back(BracketTerm{k, Rational(coef)});
  return e;
}

Eigen::MatrixXd unit(std::size_t m, std::size_t r, std::size_t c, double value = 1.0) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
  return out;
}

AlgebraVector vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return AlgebraVector(std::move(v));
}

GroupPath word(std::initializer_list<AlgebraVector> generators) {
  GroupPath path;
  for (const auto& x : generators) path.segments.push_back(PathSegment{x, 1.0});
  return path;
}

TwoCochain single(std::size_t n, std::size_t i, std::size_t j, long value) {
  TwoCochain c(n);
  c.set(i, j, Rational(value));
  return c;
}



std::shared_ptr<const LieAlgebra> se2_algebra(std::string name) {
  // basis (J, P1, P2): [J,P1] = P2, [J,P2] = -P1
  return std::make_shared<const LieAlgebra>(std::move(name), std::vector<std::string>{"J", "P1", "P2"},
                                            std::vector<BracketEntry>{entry(0, 1, {{2, 1}}), entry(0, 2, {{1, -1}})});
}

// Shared by abelian2 and torus2: one algebra, two groups.
std::shared_ptr<const LieAlgebra> plane_algebra() {
  static const auto algebra = std::make_shared<const LieAlgebra>("abelian2", std::vector<std::string>{"e1", "e2"},
                                                                 std::vector<BracketEntry>{});
  return algebra;
}

Model abelian2() {
  auto algebra = plane_algebra();
  // Translations of the plane as 3x3 affine matrices.
  std::vector<Eigen::MatrixXd> embed{unit(3, 0, 2), unit(3, 1, 2)};
  CanonicalPathStrategy strategy{"translation", [](const Eigen::MatrixXd& g) {
                                   return word({vec({g(0, 2), g(1, 2)})});
                                 }};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{}, true,
                                                  kDefaultMembershipTol, std::move(strategy));
  return Model{"abelian2", algebra, chart, {{"area", single(2, 0, 1, 1)}},
               ModelExpectations{1, {{"area", Verdict::integrable}}}};
}

Model torus2() {
  auto algebra = plane_algebra();
  // Two rotation blocks with period 1.
  Eigen::MatrixXd e1 = unit(4, 1, 0, kTwoPi) + unit(4, 0, 1, -kTwoPi);
  Eigen::MatrixXd e2 = unit(4, 3, 2, kTwoPi) + unit(4, 2, 3, -kTwoPi);
  std::vector<GroupPath> loops{word({vec({1.0, 0.0})}), word({vec({0.0, 1.0})})};
  CanonicalPathStrategy strategy{"angles", [](const Eigen::MatrixXd& g) {
                                   return word({vec({std::atan2(g(1, 0), g(0, 0)) / kTwoPi,
                                                     std::atan2(g(3, 2), g(2, 2)) / kTwoPi})});
                                 }};
  auto chart = std::make_shared<const GroupChart>(algebra, std::vector<Eigen::MatrixXd>{e1, e2}, std::move(loops),
                                                  false, kDefaultMembershipTol, std::move(strategy));
  return Model{"torus2", algebra, chart, {{"area", single(2, 0, 1, 1)}}, ModelExpectations{1, {{"area", Verdict::obstructed}}}};
}

// Upper unitriangular 3x3 chart with basis matrices E01, E12, E02 at the
// given basis positions; g = exp(a X01) exp(b X12) exp((c - ab) X02).
CanonicalPathStrategy unitriangular_strategy(std::size_t pos01, std::size_t pos12, std::size_t pos02) {
  return CanonicalPathStrategy{"unitriangular", [=](const Eigen::MatrixXd& g) {
                                 const double a = g(0, 1);
                                 const double b = g(1, 2);
                                 const double c = g(0, 2) - a * b;
                                 auto along = [](std::size_t pos, double value) {
                                   AlgebraVector x = AlgebraVector::zero(3);
                                   x.coeffs[static_cast<Eigen::Index>(pos)] = value;
                                   return x;
                                 };
                                 return word({along(pos01, a), along(pos12, b), along(pos02, c)});
                               }};
}

Model heisenberg3() {
  auto algebra = std::make_shared<const LieAlgebra>("heisenberg3", std::vector<std::string>{"e1", "e2", "e3"},
                                                    std::vector<BracketEntry>{entry(0, 1, {{2, 1}})});
  std::vector<Eigen::MatrixXd> embed{unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{}, true,
                                                  kDefaultMembershipTol, unitriangular_strategy(0, 1, 2));
  return Model{"heisenberg3", algebra,
               chart,
               {{"e1e3", single(3, 0, 2, 1)}, {"e2e3", single(3, 1, 2, 1)}, {"coboundary", single(3, 0, 1, 1)}},
               ModelExpectations{2,
                                 {{"e1e3", Verdict::integrable},
                                  {"e2e3", Verdict::integrable},
                                  {"coboundary", Verdict::integrable}}}};
}

Eigen::MatrixXd rotation_generator(std::size_t m) { return unit(m, 1, 0) - unit(m, 0, 1); }

// g = T(t) R(phi): translation segment, then rotation segment.
GroupPath se2_word(double t1, double t2, double phi) { return word({vec({0.0, t1, t2}), vec({phi, 0.0, 0.0})}); }

Model se2() {
  auto algebra = se2_algebra("se2");
  std::vector<Eigen::MatrixXd> embed{rotation_generator(3), unit(3, 0, 2), unit(3, 1, 2)};
  GroupPath loop{{PathSegment{vec({1.0, 0.0, 0.0}), kTwoPi}}};
  CanonicalPathStrategy strategy{"translation-rotation", [](const Eigen::MatrixXd& g) {
                                   return se2_word(g(0, 2), g(1, 2), std::atan2(g(1, 0), g(0, 0)));
                                 }};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{loop}, false,
                                                  kDefaultMembershipTol, std::move(strategy));
  TwoCochain coboundary(3);
  coboundary.set(0, 1, Rational(-1));  // ce_d1 of the P2 covector
  return Model{"se2", algebra,
               chart,
               {{"translations", single(3, 1, 2, 1)}, {"coboundary", coboundary}},
               ModelExpectations{1, {{"translations", Verdict::integrable}, {"coboundary", Verdict::integrable}}}};
}

Model se2_cover() {
  auto algebra = se2_algebra("se2_cover");
  // A unipotent block carries the unrolled angle.
  Eigen::MatrixXd j = rotation_generator(5) + unit(5, 3, 4);
  std::vector<Eigen::MatrixXd> embed{j, unit(5, 0, 2), unit(5, 1, 2)};
  CanonicalPathStrategy strategy{"translation-rotation", [](const Eigen::MatrixXd& g) {
                                   return se2_word(g(0, 2), g(1, 2), g(3, 4));
                                 }};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{}, true,
                                                  kDefaultMembershipTol, std::move(strategy));
  return Model{"se2_cover", algebra, chart, {{"translations", single(3, 1, 2, 1)}},
               ModelExpectations{1, {{"translations", Verdict::integrable}}}};
}

Model sl2() {
  // basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H
  auto algebra = std::make_shared<const LieAlgebra>(
      "sl2", std::vector<std::string>{"H", "E", "F"},
      std::vector<BracketEntry>{entry(0, 1, {{1, 2}}), entry(0, 2, {{2, -2}}), entry(1, 2, {{0, 1}})});
  Eigen::MatrixXd h = unit(2, 0, 0) - unit(2, 1, 1);
  std::vector<Eigen::MatrixXd> embed{h, unit(2, 0, 1), unit(2, 1, 0)};
  // exp(t (E - F)) is the rotation subgroup; period 2 pi.
  GroupPath loop{{PathSegment{vec({0.0, 1.0, -1.0}), kTwoPi}}};
  // Iwasawa decomposition g = exp(phi (E - F)) exp(s H) exp(u E).
  CanonicalPathStrategy strategy{"iwasawa", [](const Eigen::MatrixXd& g) {
                                   const double r11 = std::hypot(g(0, 0), g(1, 0));
                                   const double q1x = g(0, 0) / r11;
                                   const double q1y = g(1, 0) / r11;
                                   const double r12 = q1x * g(0, 1) + q1y * g(1, 1);
                                   const double phi = std::atan2(-q1y, q1x);
                                   return word({vec({0.0, phi, -phi}), vec({std::log(r11), 0.0, 0.0}),
                                                vec({0.0, r12 / r11, 0.0})});
                                 }};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{loop}, false,
                                                  kDefaultMembershipTol, std::move(strategy));
  TwoCochain coboundary(3);
  coboundary.set(1, 2, Rational(-1));  // ce_d1 of the H covector
  return Model{"sl2", algebra, chart, {{"coboundary", coboundary}},
               ModelExpectations{0, {{"coboundary", Verdict::integrable}}}};
}

Model galilei_1_1() {
  // basis (H, B, P): [B,H] = P, so [H,B] = -P.
  auto algebra = std::make_shared<const LieAlgebra>("galilei_1_1", std::vector<std::string>{"H", "B", "P"},
                                                    std::vector<BracketEntry>{entry(0, 1, {{2, -1}})});
  // Acting on (x, t, 1): B = E01, H = E12, P = E02.
  std::vector<Eigen::MatrixXd> embed{unit(3, 1, 2), unit(3, 0, 1), unit(3, 0, 2)};
  auto chart = std::make_shared<const GroupChart>(algebra, std::move(embed), std::vector<GroupPath>{}, true,
                                                  kDefaultMembershipTol, unitriangular_strategy(1, 0, 2));
  return Model{"galilei_1_1", algebra, chart, {{"mass", single(3, 1, 2, 1)}},
               ModelExpectations{2, {{"mass", Verdict::integrable}}}};
}

Model oscillator() {
  // basis (J, P1, P2, Z): [J,P1] = P2, [J,P2] = -P1, [P1,P2] = Z
  auto algebra = std::make_shared<const LieAlgebra>(
      "oscillator", std::vector<std::string>{"J", "P1", "P2", "Z"},
      std::vector<BracketEntry>{entry(0, 1, {{2, 1}}), entry(0, 2, {{1, -1}}), entry(1, 2, {{3, 1}})});
  return Model{"oscillator", algebra, nullptr, {}, ModelExpectations{0, {}}};
}

using Factory = std::function<Model()>;

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> models{
      {"abelian2", abelian2}, {"torus2", torus2},           {"heisenberg3", heisenberg3}, {"se2", se2},
      {"se2_cover", se2_cover}, {"sl2", sl2},             {"galilei_1_1", galilei_1_1}, {"oscillator", oscillator},
  };
  return models;
}

}  // namespace

const TwoCochain& Model::cocycle(const std::string& name) const {
  for (const auto& c : cocycles)
    if (c.name == name) return c.cochain;
  throw Error(ErrorCode::unknown_cocycle, kModule, "model '" + this->name + "' has no cocycle named '" + name + "'");
}

std::vector<std::string> list_models() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

Model get_model(const std::string& name) {
  for (const auto& [model_name, factory] : registry())
    if (model_name == name) {
      Model m = factory();
      for (const auto& c : m.cocycles)
        if (!is_cocycle(*m.algebra, c.cochain))
          throw Error(ErrorCode::invariant_failure, kModule, "catalog cocycle '" + c.name + "' is not closed");
      return m;
    }
  throw Error(ErrorCode::unknown_model, kModule, "unknown model '" + name + "'");
}

}  // namespace liesymp
