#pragma once

// Coadjoint orbits with the KKS form, orbits of the affine action
// rho(g) alpha = Ad*_g alpha - theta(g) with their form <alpha,[X,Y]> + c(X,Y),
// the coadjoint action of the central extension on g* + R, and numerical
// checks of the comoment identities on these orbits.
//
// Frames: the fundamental vector of X at alpha is the derivative of the
// action, ad*_X alpha - c(X, .) for the affine action (c = 0 gives the
// coadjoint case).

#include "liesymp/algebra.hpp"
#include "liesymp/cocycle.hpp"
#include "liesymp/group.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace liesymp {

enum class OrbitKind { coadjoint, affine, hat };
const char* to_string(OrbitKind kind);

struct OrbitSample {
  OrbitKind kind = OrbitKind::coadjoint;
  RationalVector alpha;
  std::optional<Rational> eta;
  std::vector<Covector> points;
  /// Column i is the fundamental vector of e_i at alpha.
  RationalMatrix tangent_frame;
  /// Entry (i, j) is the orbit form evaluated on the frame vectors of e_i, e_j.
  RationalMatrix form;
  std::size_t orbit_dim = 0;
  /// Frame columns spanning the tangent space, chosen greedily by largest
  /// remaining column norm (ties by index).
  std::vector<std::size_t> pivots;
  bool kernel_aligned = false;
  /// Form restricted to the pivot directions has full rank.
  bool nondegenerate = false;
  /// Singular-value margin of the frame rank decision (see RankDecision).
  double rank_margin = 0.0;

  Eigen::MatrixXd form_values() const { return form.to_eigen(); }
};

OrbitSample kks_form(const LieAlgebra& algebra, const RationalVector& alpha, double tol_rank = kDefaultTolRank);
OrbitSample affine_orbit_form(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha,
                              double tol_rank = kDefaultTolRank);
/// KKS form of the extended algebra at (alpha, eta).
OrbitSample hat_orbit_form(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha,
                           const Rational& eta, double tol_rank = kDefaultTolRank);

/// rho(g) alpha = Coad(g, alpha) - theta(g). Requires a non-obstructed evaluator.
Covector affine_action(const ThetaEvaluator& ev, const GroupElement& g, const Covector& alpha);

struct HatCovector {
  Covector alpha;
  double eta = 0.0;
};

/// (Coad(g, alpha) - eta theta(g), eta); eta is returned untouched.
HatCovector hat_coadjoint(const ThetaEvaluator& ev, const GroupElement& g, const HatCovector& point);

/// max |omega_aff(alpha) - KKS of the extension at (alpha, 1)| over the
/// first n x n block; computed exactly.
Rational hyperplane_isomorphism_check(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha);

/// Fills `orbit.points` with images of orbit.alpha under `count` seeded words.
void sample_orbit(OrbitSample& orbit, const ThetaEvaluator& ev, std::size_t count, std::uint64_t seed);

struct MomentCheckReport {
  double poisson_residual = 0.0;
  std::optional<double> equivariance_residual;
  /// Residual of the lifted comoment phi_(X,u) = phi_X + u on the extension.
  double lifted_residual = 0.0;
  /// Brackets of lifted comoments equal the unlifted ones bit for bit.
  bool lifted_exact = false;
  /// {phi_X, phi_X} and the expected value both came out exactly 0.
  bool self_bracket_exact = false;
  bool degenerate = false;
  std::size_t orbit_dim = 0;
  std::size_t samples = 0;
  double step = 0.0;
  std::uint64_t seed = 0;
};

/// Checks {phi_X, phi_Y} = <alpha, [X, Y]> + c(X, Y) at alpha on the affine
/// orbit, with phi_X(beta) = <beta, X>, using the local chart
/// u -> rho(exp(sum u_k e_{p_k})) alpha over the pivot directions.
MomentCheckReport poisson_bracket_check(const ThetaEvaluator& ev, const RationalVector& alpha, std::size_t trials,
                                        std::uint64_t seed, double h = kFiniteDifferenceStep,
                                        double tol_rank = kDefaultTolRank);

/// max over seeded (g, beta1, beta2) of
/// |(Coad(g, beta1) - rho(g) beta1) - (Coad(g, beta2) - rho(g) beta2)|.
double equivariance_check(const ThetaEvaluator& ev, const Covector& alpha, std::size_t trials, std::uint64_t seed);

/// max over seeded pairs of |hat(g1 g2) p - hat(g1) hat(g2) p| at p = (alpha, eta);
/// `relative` divides each deviation by max(1, |hat(g1 g2) p|); `conditioned`
/// further divides by the condition number |g||g^-1| of g1 g2. Throws
/// Error(invariant_failure) if eta ever changes.
ResidualReport hat_composition_residual(const ThetaEvaluator& ev, const HatCovector& point, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace liesymp
