#pragma once

// The symplectic group cocycle theta : G -> g* integrating a CE 2-cocycle c,
// obtained by integrating
//
//   d/dt theta(g(t)) = Coad(g(t), c(X(t), .))
//
// along paths whose left-logarithmic derivative is X(t). theta is well defined
// on G exactly when its change around every pi_1 generator loop vanishes,
// which is the integrability test for the central extension defined by c.

#include "liesymp/algebra.hpp"
#include "liesymp/group.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace liesymp {

struct QuadratureRule {
  std::string id = "gauss-legendre";
  int order = 8;
  /// Allowed step-halving disagreement per segment, relative to max(1, |I|).
  double tol = 1e-10;
  int max_depth = 30;
};

struct HolonomyTolerances {
  /// Loop norms above obstruction_factor * max(1, |c|) certify an obstruction.
  double obstruction_factor = 1e-4;
  /// Loop norms below zero_factor * max(1, |c|) count as closed.
  double zero_factor = 1e-8;
};

inline constexpr double kFiniteDifferenceStep = 1e-4;

enum class Verdict { integrable, obstructed, indeterminate };
const char* to_string(Verdict v);

struct LoopHolonomy {
  Covector delta;
  double norm = 0.0;
};

struct HolonomyReport {
  std::vector<LoopHolonomy> loops;
  Verdict verdict = Verdict::integrable;
  double obstruction_threshold = 0.0;
  double zero_tolerance = 0.0;
  /// True when the chart is not declared simply connected: the verdict only
  /// speaks for the loops that were declared.
  bool relative_to_declared_loops = false;
};

class ThetaEvaluator {
 public:
  /// Requires c to be a CE cocycle of the chart's algebra. Loop holonomy is
  /// computed once here.
  ThetaEvaluator(std::shared_ptr<const GroupChart> chart, TwoCochain cocycle, QuadratureRule rule = {},
                 HolonomyTolerances tolerances = {});

  const GroupChart& chart() const noexcept { return *chart_; }
  const std::shared_ptr<const GroupChart>& chart_ptr() const noexcept { return chart_; }
  const TwoCochain& cocycle() const noexcept { return cocycle_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  const HolonomyTolerances& tolerances() const noexcept { return tolerances_; }
  const std::string& canonical_strategy_id() const noexcept { return chart_->canonical_strategy_id(); }
  const HolonomyReport& holonomy() const noexcept { return holonomy_; }

  bool obstructed() const noexcept { return holonomy_.verdict == Verdict::obstructed; }

 private:
  std::shared_ptr<const GroupChart> chart_;
  TwoCochain cocycle_;
  QuadratureRule rule_;
  HolonomyTolerances tolerances_;
  HolonomyReport holonomy_;
};

/// theta(endpoint) computed along the given path; valid for obstructed
/// evaluators too, where the value depends on the path.
Covector theta_along_path(const ThetaEvaluator& ev, const GroupPath& path);

/// theta on the chart's canonical path to g. Throws Error(obstructed) when the
/// evaluator is obstructed.
Covector theta_at(const ThetaEvaluator& ev, const GroupElement& g);

const HolonomyReport& holonomy(const ThetaEvaluator& ev);

struct ResidualReport {
  double residual = 0.0;
  /// Residual divided by the magnitude of the compared quantities (at least 1).
  double relative = 0.0;
  /// Relative residual divided by the condition number of the elements
  /// involved, where the check reports one.
  double conditioned = 0.0;
  std::size_t argmax = 0;
  std::size_t samples = 0;
};

using ElementPair = std::pair<GroupElement, GroupElement>;

/// max |theta(g1 g2) - Coad(g1, theta(g2)) - theta(g1)|.
ResidualReport cocycle_residual(const ThetaEvaluator& ev, const std::vector<ElementPair>& pairs);

struct DerivativeCheck {
  /// max |central difference of theta along exp(hX) - c(X, .)|.
  double derivative_deviation = 0.0;
  /// max |<d theta(X), Y> + <d theta(Y), X>| over direction pairs.
  double skewness = 0.0;
  double residual() const { return std::max(derivative_deviation, skewness); }
};

DerivativeCheck d_e_theta_check(const ThetaEvaluator& ev, const std::vector<AlgebraVector>& directions,
                                double h = kFiniteDifferenceStep);

struct NeebSample {
  GroupElement g;
  AlgebraVector x;
  AlgebraVector y;
};

/// Compares the derivative of Phi_X(g) = -<theta(g), X> along the right-invariant
/// field of Y (s -> exp(sY) g, central differences) with
/// c(Ad(g^{-1}) X, Ad(g^{-1}) Y).
ResidualReport neeb_residual(const ThetaEvaluator& ev, const std::vector<NeebSample>& samples,
                             double h = kFiniteDifferenceStep);

enum class Frame { left, right };

/// Value of the left-invariant 2-form with value c at the identity on the
/// left- or right-invariant fields of X and Y at g.
double invariant_form_value(const GroupChart& chart, const TwoCochain& c, const GroupElement& g,
                            const AlgebraVector& x, const AlgebraVector& y, Frame frame);

}  // namespace liesymp
