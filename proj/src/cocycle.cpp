#include "liesymp/cocycle.hpp"

#include "liesymp/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <sstream>

namespace liesymp {

namespace {

constexpr const char* kModule = "cocycle";

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

const GaussRule& gauss_legendre_8() {
  static const GaussRule rule = [] {
    using Gauss = boost::math::quadrature::gauss<double, 8>;
    GaussRule r;
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
      if (x[i] != 0.0) {
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
      }
    }
    return r;
  }();
  return rule;
}

// Integrates t -> base * Coad(exp(t X), xi) over [0, duration] for one segment.
class SegmentIntegrator {
 public:
  SegmentIntegrator(const GroupChart& chart, const Eigen::MatrixXd& base_coad, const AlgebraVector& x,
                    const Covector& xi, const QuadratureRule& rule, double duration, std::size_t segment)
      : chart_(chart), base_(base_coad), x_(x), xi_(xi), rule_(rule), duration_(duration), segment_(segment) {}

  Eigen::VectorXd integrate() {
    const Eigen::VectorXd whole = gauss(0.0, duration_);
    return refine(0.0, duration_, whole, 0);
  }

 private:
  Eigen::VectorXd integrand(double t) const {
    const GroupElement g = exp(chart_, AlgebraVector(x_.coeffs * t));
    return base_ * (coadjoint_matrix(chart_, g) * xi_.coeffs);
  }

  Eigen::VectorXd gauss(double a, double b) const {
    const GaussRule& r = gauss_legendre_8();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(xi_.coeffs.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * integrand(mid + half * r.nodes[i]);
    return half * sum;
  }

  Eigen::VectorXd refine(double a, double b, const Eigen::VectorXd& coarse, int depth) {
    const double mid = 0.5 * (a + b);
    const Eigen::VectorXd left = gauss(a, mid);
    const Eigen::VectorXd right = gauss(mid, b);
    const Eigen::VectorXd fine = left + right;
    const double disagreement = (fine - coarse).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
    const double allowed = rule_.tol * scale * (b - a) / duration_;
    if (disagreement <= allowed) return fine;
    if (depth >= rule_.max_depth) {
      std::ostringstream os;
      os << "quadrature did not converge on segment " << segment_ << " (disagreement " << disagreement << ")";
      throw Error(ErrorCode::quadrature_failure, kModule, os.str());
    }
    return refine(a, mid, left, depth + 1) + refine(mid, b, right, depth + 1);
  }

  const GroupChart& chart_;
  const Eigen::MatrixXd& base_;
  const AlgebraVector& x_;
  const Covector& xi_;
  const QuadratureRule& rule_;
  double duration_;
  std::size_t segment_;
};

Covector integrate_path(const GroupChart& chart, const TwoCochain& c, const QuadratureRule& rule,
                        const GroupPath& path) {
  const std::size_t n = chart.algebra().dim();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd g = chart.identity().matrix();
  for (std::size_t s = 0; s < path.segments.size(); ++s) {
    const PathSegment& seg = path.segments[s];
    if (seg.generator.size() != n)
      throw Error(ErrorCode::dimension_mismatch, kModule, "path segment has the wrong dimension");
    if (!(seg.duration > 0.0)) throw Error(ErrorCode::invalid_structure, kModule, "path segment duration must be positive");
    const Covector xi = c.contract(seg.generator);
    if (!xi.coeffs.isZero(0.0)) {
      const Eigen::MatrixXd base = coadjoint_matrix(chart, chart.element(g));
      SegmentIntegrator integrator(chart, base, seg.generator, xi, rule, seg.duration, s);
      theta += integrator.integrate();
    }
    if (!seg.generator.coeffs.isZero(0.0))
      g = g * exp(chart, AlgebraVector(seg.generator.coeffs * seg.duration)).matrix();
  }
  return Covector(std::move(theta));
}

HolonomyReport compute_holonomy(const GroupChart& chart, const TwoCochain& c, const QuadratureRule& rule,
                                const HolonomyTolerances& tol) {
  HolonomyReport report;
  const double scale = std::max(1.0, c.norm());
  report.obstruction_threshold = tol.obstruction_factor * scale;
  report.zero_tolerance = tol.zero_factor * scale;
  report.relative_to_declared_loops = !chart.simply_connected();
  bool obstructed = false;
  bool gray = false;
  for (const auto& loop : chart.loops()) {
    LoopHolonomy h;
    h.delta = integrate_path(chart, c, rule, loop);
    h.norm = h.delta.coeffs.norm();
    if (h.norm > report.obstruction_threshold)
      obstructed = true;
    else if (h.norm >= report.zero_tolerance)
      gray = true;
    report.loops.push_back(std::move(h));
  }
  report.verdict = obstructed ? Verdict::obstructed : gray ? Verdict::indeterminate : Verdict::integrable;
  return report;
}

double magnitude(std::initializer_list<const Eigen::VectorXd*> parts) {
  double sum = 0.0;
  for (const auto* p : parts) sum += p->norm();
  return std::max(1.0, sum);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::integrable: return "integrable";
    case Verdict::obstructed: return "obstructed";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

ThetaEvaluator::ThetaEvaluator(std::shared_ptr<const GroupChart> chart, TwoCochain cocycle, QuadratureRule rule,
                               HolonomyTolerances tolerances)
    : chart_(std::move(chart)), cocycle_(std::move(cocycle)), rule_(std::move(rule)), tolerances_(tolerances) {
  if (!chart_) throw Error(ErrorCode::invalid_structure, kModule, "evaluator requires a chart");
  if (rule_.id != "gauss-legendre" || rule_.order != 8)
    throw Error(ErrorCode::invalid_structure, kModule, "only the order-8 Gauss-Legendre rule is available");
  if (!(rule_.tol > 0.0)) throw Error(ErrorCode::invalid_structure, kModule, "quadrature tolerance must be positive");
  if (cocycle_.dim() != chart_->algebra().dim())
    throw Error(ErrorCode::dimension_mismatch, kModule, "cocycle dimension does not match the chart's algebra");
  if (!is_cocycle(chart_->algebra(), cocycle_))
    throw Error(ErrorCode::not_cocycle, kModule, "theta can only integrate a closed 2-cochain");
  holonomy_ = compute_holonomy(*chart_, cocycle_, rule_, tolerances_);
}

Covector theta_along_path(const ThetaEvaluator& ev, const GroupPath& path) {
  return integrate_path(ev.chart(), ev.cocycle(), ev.rule(), path);
}

Covector theta_at(const ThetaEvaluator& ev, const GroupElement& g) {
  if (ev.obstructed())
    throw Error(ErrorCode::obstructed, kModule,
                "theta is multivalued for an obstructed cocycle; use theta_along_path with an explicit path");
  return theta_along_path(ev, ev.chart().canonical_path(g));
}

const HolonomyReport& holonomy(const ThetaEvaluator& ev) { return ev.holonomy(); }

ResidualReport cocycle_residual(const ThetaEvaluator& ev, const std::vector<ElementPair>& pairs) {
  const GroupChart& chart = ev.chart();
  ResidualReport report;
  report.samples = pairs.size();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [g1, g2] = pairs[p];
    const Eigen::VectorXd t12 = theta_at(ev, compose(chart, g1, g2)).coeffs;
    const Eigen::VectorXd t1 = theta_at(ev, g1).coeffs;
    const Eigen::VectorXd t2 = Coad(chart, g1, theta_at(ev, g2)).coeffs;
    const double r = (t12 - t2 - t1).norm();
    if (r > report.residual) {
      report.residual = r;
      report.argmax = p;
    }
    report.relative = std::max(report.relative, r / magnitude({&t12, &t1, &t2}));
  }
  return report;
}

DerivativeCheck d_e_theta_check(const ThetaEvaluator& ev, const std::vector<AlgebraVector>& directions, double h) {
  DerivativeCheck check;
  std::vector<Eigen::VectorXd> derivatives;
  for (const auto& x : directions) {
    const GroupPath forward{{PathSegment{AlgebraVector(x.coeffs * h), 1.0}}};
    const GroupPath backward{{PathSegment{AlgebraVector(-x.coeffs * h), 1.0}}};
    const Eigen::VectorXd d =
        (theta_along_path(ev, forward).coeffs - theta_along_path(ev, backward).coeffs) / (2.0 * h);
    const Eigen::VectorXd expected = ev.cocycle().contract(x).coeffs;
    if (d.size() > 0) check.derivative_deviation = std::max(check.derivative_deviation, (d - expected).cwiseAbs().maxCoeff());
    derivatives.push_back(d);
  }
  for (std::size_t a = 0; a < directions.size(); ++a)
    for (std::size_t b = a; b < directions.size(); ++b) {
      const double skew = derivatives[a].dot(directions[b].coeffs) + derivatives[b].dot(directions[a].coeffs);
      check.skewness = std::max(check.skewness, std::abs(skew));
    }
  return check;
}

ResidualReport neeb_residual(const ThetaEvaluator& ev, const std::vector<NeebSample>& samples, double h) {
  const GroupChart& chart = ev.chart();
  ResidualReport report;
  report.samples = samples.size();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [g, x, y] = samples[s];
    const GroupElement plus = compose(chart, exp(chart, AlgebraVector(y.coeffs * h)), g);
    const GroupElement minus = compose(chart, exp(chart, AlgebraVector(-y.coeffs * h)), g);
    const Eigen::VectorXd theta_plus = theta_at(ev, plus).coeffs;
    const Eigen::VectorXd theta_minus = theta_at(ev, minus).coeffs;
    const double lie_derivative = -(theta_plus.dot(x.coeffs) - theta_minus.dot(x.coeffs)) / (2.0 * h);
    const double form = invariant_form_value(chart, ev.cocycle(), g, x, y, Frame::right);
    const double r = std::abs(lie_derivative - form);
    if (r > report.residual) {
      report.residual = r;
      report.argmax = s;
    }
    const double scale = std::max({1.0, std::abs(form), theta_plus.norm() * x.coeffs.norm()});
    report.relative = std::max(report.relative, r / scale);
  }
  return report;
}

double invariant_form_value(const GroupChart& chart, const TwoCochain& c, const GroupElement& g,
                            const AlgebraVector& x, const AlgebraVector& y, Frame frame) {
  if (frame == Frame::left) return c.evaluate(x, y);
  const GroupElement g_inv = inverse(chart, g);
  return c.evaluate(Ad(chart, g_inv, x), Ad(chart, g_inv, y));
}

}  // namespace liesymp
