#include "liesymp/orbit.hpp"

#include "liesymp/error.hpp"
#include "liesymp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liesymp {

namespace {

constexpr const char* kModule = "orbit";

std::size_t decide_rank(const LieAlgebra& algebra, const RationalMatrix& m, double tol_rank) {
  if (algebra.mode() == ScalarMode::exact) return m.rank();
  return numerical_rank(m.to_eigen(), tol_rank, kModule).rank;
}

std::vector<std::size_t> greedy_pivots(const Eigen::MatrixXd& frame, std::size_t count) {
  Eigen::MatrixXd residual = frame;
  std::vector<std::size_t> pivots;
  for (std::size_t step = 0; step < count; ++step) {
    Eigen::Index best = -1;
    double best_norm = 0.0;
    for (Eigen::Index c = 0; c < residual.cols(); ++c) {
      if (std::find(pivots.begin(), pivots.end(), static_cast<std::size_t>(c)) != pivots.end()) continue;
      const double norm = residual.col(c).norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = c;
      }
    }
    if (best < 0) break;
    const Eigen::VectorXd q = residual.col(best) / best_norm;
    residual -= q * (q.transpose() * residual);
    pivots.push_back(static_cast<std::size_t>(best));
  }
  std::sort(pivots.begin(), pivots.end());
  return pivots;
}

// Fills rank, pivots and the kernel/nondegeneracy flags from frame and form.
void analyse(OrbitSample& orbit, const LieAlgebra& algebra, double tol_rank) {
  const std::size_t n = orbit.form.rows();
  const RankDecision numeric = numerical_rank_unchecked(orbit.tangent_frame.to_eigen(), tol_rank);
  orbit.rank_margin = numeric.margin;
  orbit.orbit_dim = decide_rank(algebra, orbit.tangent_frame, tol_rank);
  orbit.pivots = greedy_pivots(orbit.tangent_frame.to_eigen(), orbit.orbit_dim);
  if (orbit.pivots.size() != orbit.orbit_dim)
    throw Error(ErrorCode::rank_deficient_frame, kModule, "could not select a basis of tangent directions");

  RationalMatrix stacked(2 * n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      stacked(r, c) = orbit.tangent_frame(r, c);
      stacked(n + r, c) = orbit.form(r, c);
    }
  const std::size_t form_rank = decide_rank(algebra, orbit.form, tol_rank);
  orbit.kernel_aligned = form_rank == orbit.orbit_dim && decide_rank(algebra, stacked, tol_rank) == orbit.orbit_dim;

  const std::size_t d = orbit.pivots.size();
  RationalMatrix restricted(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) restricted(a, b) = orbit.form(orbit.pivots[a], orbit.pivots[b]);
  orbit.nondegenerate = decide_rank(algebra, restricted, tol_rank) == d;
}

OrbitSample orbit_from_forms(OrbitKind kind, const LieAlgebra& algebra, const TwoCochain* c,
                             const RationalVector& alpha, double tol_rank) {
  const std::size_t n = algebra.dim();
  if (alpha.size() != n) throw Error(ErrorCode::dimension_mismatch, kModule, "covector has the wrong dimension");
  OrbitSample orbit;
  orbit.kind = kind;
  orbit.alpha = alpha;
  orbit.tangent_frame = RationalMatrix(n, n);
  orbit.form = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational value = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(algebra.structure(i, j, k)) != 0) value += alpha[k] * algebra.structure(i, j, k);
      if (c != nullptr) value += (*c)(i, j);
      orbit.form(i, j) = value;
      // <zeta_{e_i}, e_j> = -<alpha, [e_i, e_j]> - c(e_i, e_j)
      orbit.tangent_frame(j, i) = -value;
    }
  analyse(orbit, algebra, tol_rank);
  return orbit;
}

Eigen::VectorXd hat_transform(const Eigen::MatrixXd& coad, const Eigen::VectorXd& alpha, const Eigen::VectorXd& theta,
                              double eta) {
  return coad * alpha - eta * theta;
}

}  // namespace

const char* to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::coadjoint: return "coadjoint";
    case OrbitKind::affine: return "affine";
    case OrbitKind::hat: return "hat";
  }
  return "unknown";
}

OrbitSample kks_form(const LieAlgebra& algebra, const RationalVector& alpha, double tol_rank) {
  return orbit_from_forms(OrbitKind::coadjoint, algebra, nullptr, alpha, tol_rank);
}

OrbitSample affine_orbit_form(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha,
                              double tol_rank) {
  if (c.dim() != algebra.dim()) throw Error(ErrorCode::dimension_mismatch, kModule, "cocycle has the wrong dimension");
  if (!is_cocycle(algebra, c)) throw Error(ErrorCode::not_cocycle, kModule, "affine orbit form needs a closed cochain");
  return orbit_from_forms(OrbitKind::affine, algebra, &c, alpha, tol_rank);
}

OrbitSample hat_orbit_form(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha,
                           const Rational& eta, double tol_rank) {
  const CentralExtension ext = central_extend(algebra, c);
  RationalVector extended_alpha = alpha;
  extended_alpha.push_back(eta);
  OrbitSample orbit = orbit_from_forms(OrbitKind::hat, ext.extended, nullptr, extended_alpha, tol_rank);
  orbit.alpha = alpha;
  orbit.eta = eta;
  return orbit;
}

HatCovector hat_coadjoint(const ThetaEvaluator& ev, const GroupElement& g, const HatCovector& point) {
  if (ev.obstructed())
    throw Error(ErrorCode::obstructed, kModule, "the lifted coadjoint action needs a single-valued theta");
  const Eigen::MatrixXd coad = coadjoint_matrix(ev.chart(), g);
  const Covector theta = theta_at(ev, g);
  return HatCovector{Covector(hat_transform(coad, point.alpha.coeffs, theta.coeffs, point.eta)), point.eta};
}

Covector affine_action(const ThetaEvaluator& ev, const GroupElement& g, const Covector& alpha) {
  return hat_coadjoint(ev, g, HatCovector{alpha, 1.0}).alpha;
}

Rational hyperplane_isomorphism_check(const LieAlgebra& algebra, const TwoCochain& c, const RationalVector& alpha) {
  const OrbitSample affine = affine_orbit_form(algebra, c, alpha);
  const CentralExtension ext = central_extend(algebra, c);
  RationalVector lifted = alpha;
  lifted.push_back(1);
  const std::size_t n = algebra.dim();
  Rational worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational hat_value = 0;
      for (std::size_t k = 0; k <= n; ++k)
        if (sgn(ext.extended.structure(i, j, k)) != 0) hat_value += lifted[k] * ext.extended.structure(i, j, k);
      const Rational diff = abs(hat_value - affine.form(i, j));
      if (diff > worst) worst = diff;
    }
  return worst;
}

void sample_orbit(OrbitSample& orbit, const ThetaEvaluator& ev, std::size_t count, std::uint64_t seed) {
  const GroupChart& chart = ev.chart();
  Sampler sampler(seed);
  const Covector alpha(to_eigen(orbit.alpha));
  const double eta = orbit.eta ? orbit.eta->get_d() : 1.0;
  orbit.points.clear();
  for (std::size_t s = 0; s < count; ++s) {
    const GroupElement g = path_endpoint(chart, sampler.word(chart.algebra().dim()));
    switch (orbit.kind) {
      case OrbitKind::coadjoint: orbit.points.push_back(Coad(chart, g, alpha)); break;
      case OrbitKind::affine: orbit.points.push_back(affine_action(ev, g, alpha)); break;
      case OrbitKind::hat: orbit.points.push_back(hat_coadjoint(ev, g, HatCovector{alpha, eta}).alpha); break;
    }
  }
}

MomentCheckReport poisson_bracket_check(const ThetaEvaluator& ev, const RationalVector& alpha, std::size_t trials,
                                        std::uint64_t seed, double h, double tol_rank) {
  const GroupChart& chart = ev.chart();
  const LieAlgebra& algebra = chart.algebra();
  const TwoCochain& c = ev.cocycle();
  const std::size_t n = algebra.dim();
  MomentCheckReport report;
  report.step = h;
  report.seed = seed;

  const OrbitSample orbit = affine_orbit_form(algebra, c, alpha, tol_rank);
  report.orbit_dim = orbit.orbit_dim;
  if (orbit.orbit_dim == 0) {
    report.degenerate = true;
    report.lifted_exact = true;
    report.self_bracket_exact = true;
    return report;
  }
  if (!orbit.nondegenerate) {
    std::ostringstream os;
    os << "orbit form is degenerate on the pivot directions {";
    for (auto p : orbit.pivots) os << ' ' << algebra.basis_labels()[p];
    os << " }";
    throw Error(ErrorCode::rank_deficient_frame, kModule, os.str());
  }
  const std::size_t d = orbit.orbit_dim;
  const auto di = static_cast<Eigen::Index>(d);
  const Eigen::VectorXd base = to_eigen(alpha);

  // Chart u -> rho(exp(sum u_k e_{p_k})) alpha, differentiated at u = 0.
  auto chart_point = [&](std::size_t direction, double step) {
    AlgebraVector x = AlgebraVector::zero(n);
    x.coeffs[static_cast<Eigen::Index>(direction)] = step;
    const GroupPath path{{PathSegment{x, 1.0}}};
    const GroupElement g = path_endpoint(chart, path);
    return Eigen::VectorXd(coadjoint_matrix(chart, g) * base - theta_along_path(ev, path).coeffs);
  };
  Eigen::MatrixXd jacobian(static_cast<Eigen::Index>(n), di);
  for (std::size_t k = 0; k < d; ++k)
    jacobian.col(static_cast<Eigen::Index>(k)) =
        (chart_point(orbit.pivots[k], h) - chart_point(orbit.pivots[k], -h)) / (2.0 * h);

  // Express the chart tangent vectors in the fundamental frame and pull the
  // orbit form back to chart coordinates.
  const Eigen::MatrixXd frame = orbit.tangent_frame.to_eigen();
  const Eigen::MatrixXd form = orbit.form.to_eigen();
  Eigen::MatrixXd frame_pivots(static_cast<Eigen::Index>(n), di);
  Eigen::MatrixXd form_pivots(di, di);
  for (std::size_t a = 0; a < d; ++a) {
    frame_pivots.col(static_cast<Eigen::Index>(a)) = frame.col(static_cast<Eigen::Index>(orbit.pivots[a]));
    for (std::size_t b = 0; b < d; ++b)
      form_pivots(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          form(static_cast<Eigen::Index>(orbit.pivots[a]), static_cast<Eigen::Index>(orbit.pivots[b]));
  }
  const Eigen::MatrixXd coeffs = frame_pivots.colPivHouseholderQr().solve(jacobian);
  Eigen::MatrixXd omega = coeffs.transpose() * form_pivots * coeffs;
  omega = 0.5 * (omega - omega.transpose()).eval();
  // {f, g} = -grad f^T omega^{-1} grad g
  Eigen::MatrixXd poisson = -omega.inverse();
  poisson = 0.5 * (poisson - poisson.transpose()).eval();

  auto poisson_bracket = [&](const Eigen::VectorXd& df, const Eigen::VectorXd& dg) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < di; ++k)
      for (Eigen::Index l = k + 1; l < di; ++l) sum += poisson(k, l) * (df[k] * dg[l] - df[l] * dg[k]);
    return sum;
  };
  const Covector alpha_value(base);
  auto expected = [&](const AlgebraVector& x, const AlgebraVector& y) {
    return pairing(alpha_value, bracket(algebra, x, y)) + c.evaluate(x, y);
  };
  // Central difference of the constant u is exactly zero.
  auto constant_gradient = [&](double u) { return Eigen::VectorXd(Eigen::VectorXd::Constant(di, (u - u) / (2.0 * h))); };

  std::vector<std::pair<AlgebraVector, AlgebraVector>> cases;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cases.emplace_back(AlgebraVector::basis(n, i), AlgebraVector::basis(n, j));
  Sampler sampler(seed);
  for (std::size_t t = 0; t < trials; ++t) cases.emplace_back(sampler.algebra_vector(n), sampler.algebra_vector(n));

  report.lifted_exact = true;
  for (const auto& [x, y] : cases) {
    const Eigen::VectorXd dx = jacobian.transpose() * x.coeffs;
    const Eigen::VectorXd dy = jacobian.transpose() * y.coeffs;
    const double value = poisson_bracket(dx, dy);
    const double target = expected(x, y);
    report.poisson_residual = std::max(report.poisson_residual, std::abs(value - target));

    const double u = sampler.uniform(-1.0, 1.0);
    const double v = sampler.uniform(-1.0, 1.0);
    const double lifted = poisson_bracket(dx + constant_gradient(u), dy + constant_gradient(v));
    // phi-hat of [(X,u),(Y,v)] = ([X,Y], c(X,Y)) at alpha
    const double lifted_target = pairing(alpha_value, bracket(algebra, x, y)) + c.evaluate(x, y);
    report.lifted_residual = std::max(report.lifted_residual, std::abs(lifted - lifted_target));
    if (lifted != value) report.lifted_exact = false;
  }
  report.samples = cases.size();

  const AlgebraVector x = sampler.algebra_vector(n);
  const Eigen::VectorXd dx = jacobian.transpose() * x.coeffs;
  report.self_bracket_exact = poisson_bracket(dx, dx) == 0.0 && expected(x, x) == 0.0;

  if (!ev.obstructed()) report.equivariance_residual = equivariance_check(ev, alpha_value, trials, seed);
  return report;
}

double equivariance_check(const ThetaEvaluator& ev, const Covector& alpha, std::size_t trials, std::uint64_t seed) {
  const GroupChart& chart = ev.chart();
  const std::size_t n = chart.algebra().dim();
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const GroupElement g = path_endpoint(chart, sampler.word(n));
    const Covector b1(alpha.coeffs + sampler.covector(n).coeffs);
    const Covector b2(alpha.coeffs + sampler.covector(n).coeffs);
    const Eigen::VectorXd d1 = Coad(chart, g, b1).coeffs - affine_action(ev, g, b1).coeffs;
    const Eigen::VectorXd d2 = Coad(chart, g, b2).coeffs - affine_action(ev, g, b2).coeffs;
    worst = std::max(worst, (d1 - d2).norm());
  }
  return worst;
}

ResidualReport hat_composition_residual(const ThetaEvaluator& ev, const HatCovector& point, std::size_t trials,
                                        std::uint64_t seed) {
  const GroupChart& chart = ev.chart();
  const std::size_t n = chart.algebra().dim();
  Sampler sampler(seed);
  ResidualReport report;
  report.samples = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const GroupElement g1 = path_endpoint(chart, sampler.word(n));
    const GroupElement g2 = path_endpoint(chart, sampler.word(n));
    const HatCovector direct = hat_coadjoint(ev, compose(chart, g1, g2), point);
    const HatCovector inner = hat_coadjoint(ev, g2, point);
    const HatCovector stepwise = hat_coadjoint(ev, g1, inner);
    if (direct.eta != point.eta || stepwise.eta != point.eta)
      throw Error(ErrorCode::invariant_failure, kModule, "lifted coadjoint action changed the central coordinate");
    const double r = (direct.alpha.coeffs - stepwise.alpha.coeffs).norm();
    const double scale = std::max(1.0, direct.alpha.coeffs.norm());
    const GroupElement g12 = compose(chart, g1, g2);
    const double cond = g12.matrix().norm() * inverse(chart, g12).matrix().norm();
    if (r > report.residual) {
      report.residual = r;
      report.argmax = t;
    }
    report.relative = std::max(report.relative, r / scale);
    report.conditioned = std::max(report.conditioned, r / (scale * std::max(1.0, cond)));
  }
  return report;
}

}  // namespace liesymp
