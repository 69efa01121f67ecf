#include "liesymp/group.hpp"

#include "liesymp/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <atomic>
#include <cmath>
#include <sstream>

namespace liesymp {

namespace {

constexpr const char* kModule = "group";

std::uint64_t next_chart_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

void require_chart(const GroupChart& chart, const GroupElement& g) {
  if (g.chart_id() != chart.id())
    throw Error(ErrorCode::chart_mismatch, kModule, "group element belongs to a different chart");
}

Eigen::Map<const Eigen::VectorXd> flatten(const Eigen::MatrixXd& m) { return {m.data(), m.size()}; }

}  // namespace

double GroupPath::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration;
  return total;
}

GroupPath GroupPath::normalized() const {
  const double total = total_duration();
  if (total <= 0.0) return *this;
  GroupPath out;
  for (const auto& s : segments)
    out.segments.push_back(PathSegment{AlgebraVector(s.generator.coeffs * total), s.duration / total});
  return out;
}

GroupPath GroupPath::reversed() const {
  GroupPath out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it)
    out.segments.push_back(PathSegment{AlgebraVector(-it->generator.coeffs), it->duration});
  return out;
}

GroupPath GroupPath::then(const GroupPath& other) const {
  GroupPath out = *this;
  out.segments.insert(out.segments.end(), other.segments.begin(), other.segments.end());
  return out;
}

GroupChart::GroupChart(std::shared_ptr<const LieAlgebra> algebra, std::vector<Eigen::MatrixXd> embed,
                       std::vector<GroupPath> loops, bool simply_connected, double membership_tol,
                       CanonicalPathStrategy canonical)
    : algebra_(std::move(algebra)),
      m_(0),
      embed_(std::move(embed)),
      loops_(std::move(loops)),
      simply_connected_(simply_connected),
      membership_tol_(membership_tol),
      canonical_(std::move(canonical)),
      id_(next_chart_id()) {
  if (!algebra_) throw Error(ErrorCode::invalid_structure, kModule, "chart requires an algebra");
  const std::size_t n = algebra_->dim();
  if (embed_.size() != n) {
    std::ostringstream os;
    os << "chart embeds " << embed_.size() << " matrices for an algebra of dimension " << n;
    throw Error(ErrorCode::dimension_mismatch, kModule, os.str());
  }
  if (!(membership_tol_ > 0.0)) throw Error(ErrorCode::invalid_structure, kModule, "membership_tol must be positive");
  m_ = n > 0 ? static_cast<std::size_t>(embed_.front().rows()) : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = embed_[i];
    if (static_cast<std::size_t>(e.rows()) != m_ || static_cast<std::size_t>(e.cols()) != m_) {
      std::ostringstream os;
      os << "embedded basis matrix " << i << " is not " << m_ << "x" << m_;
      throw Error(ErrorCode::dimension_mismatch, kModule, os.str());
    }
    if (!e.allFinite()) throw Error(ErrorCode::non_finite, kModule, "embedded basis matrix has non-finite entries");
  }
  for (const auto& loop : loops_)
    for (const auto& s : loop.segments)
      if (s.generator.size() != n || !(s.duration > 0.0))
        throw Error(ErrorCode::invalid_structure, kModule, "loop segment has wrong dimension or non-positive duration");

  basis_columns_.resize(static_cast<Eigen::Index>(m_ * m_), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) basis_columns_.col(static_cast<Eigen::Index>(i)) = flatten(embed_[i]);
  basis_qr_.compute(basis_columns_);
  if (n > 0) {
    basis_qr_.setThreshold(1e-12);
    if (static_cast<std::size_t>(basis_qr_.rank()) != n)
      throw Error(ErrorCode::invalid_structure, kModule, "embedded basis matrices are linearly dependent");
  }
  const double residual = faithfulness_residual();
  if (residual > kFaithfulnessTol) {
    std::ostringstream os;
    os << "embedding is not an algebra map: commutator residual " << residual;
    throw Error(ErrorCode::invalid_structure, kModule, os.str());
  }
}

double GroupChart::faithfulness_residual() const {
  const std::size_t n = algebra_->dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Eigen::MatrixXd r = embed_[i] * embed_[j] - embed_[j] * embed_[i];
      for (std::size_t k = 0; k < n; ++k) r -= algebra_->structure_value(i, j, k) * embed_[k];
      const double scale = std::max(1.0, embed_[i].norm() * embed_[j].norm());
      worst = std::max(worst, r.cwiseAbs().maxCoeff() / scale);
    }
  return worst;
}

GroupPath GroupChart::canonical_path(const GroupElement& g) const {
  require_chart(*this, g);
  if (!canonical_.decompose)
    throw Error(ErrorCode::no_canonical_path, kModule,
                "chart supplies no canonical path strategy; evaluate along an explicit path instead");
  return canonical_.decompose(g.matrix());
}

Eigen::MatrixXd GroupChart::embedding(const AlgebraVector& x) const {
  if (x.size() != algebra_->dim())
    throw Error(ErrorCode::dimension_mismatch, kModule, "algebra vector has the wrong dimension for this chart");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < embed_.size(); ++i) m += x.coeffs[static_cast<Eigen::Index>(i)] * embed_[i];
  return m;
}

AlgebraVector GroupChart::coordinates(const Eigen::MatrixXd& m) const {
  const auto v = flatten(m);
  Eigen::VectorXd x = basis_qr_.solve(v);
  const double residual = (basis_columns_ * x - v).norm();
  const double allowed = membership_tol_ * std::max(1.0, m.norm());
  if (!(residual <= allowed)) {
    std::ostringstream os;
    os << "matrix left the embedded algebra: residual " << residual << " exceeds " << allowed;
    throw Error(ErrorCode::left_embedded_algebra, kModule, os.str());
  }
  return AlgebraVector(std::move(x));
}

GroupElement GroupChart::identity() const {
  return GroupElement(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_)), id_);
}

GroupElement exp(const GroupChart& chart, const AlgebraVector& x) {
  if (!x.coeffs.allFinite()) throw Error(ErrorCode::non_finite, kModule, "exp of a non-finite algebra element");
  const Eigen::MatrixXd a = chart.embedding(x);
  return chart.element(a.exp());
}

GroupElement compose(const GroupChart& chart, const GroupElement& a, const GroupElement& b) {
  require_chart(chart, a);
  require_chart(chart, b);
  return chart.element(a.matrix() * b.matrix());
}

GroupElement inverse(const GroupChart& chart, const GroupElement& g) {
  require_chart(chart, g);
  return chart.element(g.matrix().partialPivLu().inverse());
}

GroupElement path_endpoint(const GroupChart& chart, const GroupPath& path) {
  Eigen::MatrixXd g = chart.identity().matrix();
  for (const auto& s : path.segments) {
    if (s.generator.size() != chart.algebra().dim())
      throw Error(ErrorCode::dimension_mismatch, kModule, "path segment has the wrong dimension for this chart");
    g = g * exp(chart, AlgebraVector(s.generator.coeffs * s.duration)).matrix();
  }
  return chart.element(std::move(g));
}

Eigen::MatrixXd adjoint_matrix(const GroupChart& chart, const GroupElement& g) {
  require_chart(chart, g);
  const std::size_t n = chart.algebra().dim();
  if (g.matrix().isIdentity(0.0))
    return Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Eigen::MatrixXd g_inv = g.matrix().partialPivLu().inverse();
  Eigen::MatrixXd ad(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    ad.col(static_cast<Eigen::Index>(i)) = chart.coordinates(g.matrix() * chart.embed()[i] * g_inv).coeffs;
  return ad;
}

Eigen::MatrixXd coadjoint_matrix(const GroupChart& chart, const GroupElement& g) {
  return adjoint_matrix(chart, inverse(chart, g)).transpose();
}

AlgebraVector Ad(const GroupChart& chart, const GroupElement& g, const AlgebraVector& x) {
  require_chart(chart, g);
  if (x.size() != chart.algebra().dim())
    throw Error(ErrorCode::dimension_mismatch, kModule, "algebra vector has the wrong dimension for this chart");
  if (g.matrix().isIdentity(0.0)) return x;
  const Eigen::MatrixXd g_inv = g.matrix().partialPivLu().inverse();
  return chart.coordinates(g.matrix() * chart.embedding(x) * g_inv);
}

Covector Coad(const GroupChart& chart, const GroupElement& g, const Covector& alpha) {
  if (alpha.size() != chart.algebra().dim())
    throw Error(ErrorCode::dimension_mismatch, kModule, "covector has the wrong dimension for this chart");
  return Covector(coadjoint_matrix(chart, g) * alpha.coeffs);
}

}  // namespace liesymp
