#pragma once

// Connected matrix Lie groups presented by a chart: a faithful embedding of
// the algebra basis into m x m matrices, declared pi_1 generator loops, and
// optionally a closed-form word decomposition used as the canonical path to
// each element.

#include "liesymp/algebra.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace liesymp {

struct PathSegment {
  AlgebraVector generator;
  double duration = 1.0;
};

/// Piecewise one-parameter path from the identity: on segment s,
/// g(t) = g_{s-1} exp((t - t_{s-1}) X_s).
struct GroupPath {
  std::vector<PathSegment> segments;

  double total_duration() const;
  /// Rescales durations to sum to 1 while keeping every segment endpoint.
  GroupPath normalized() const;
  /// Traverses the path backwards; its endpoint is the inverse element.
  GroupPath reversed() const;
  /// This path followed by `other` left-translated by this endpoint.
  GroupPath then(const GroupPath& other) const;
};

class GroupChart;

class GroupElement {
 public:
  GroupElement(Eigen::MatrixXd matrix, std::uint64_t chart_id) : matrix_(std::move(matrix)), chart_id_(chart_id) {}
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  std::uint64_t chart_id() const noexcept { return chart_id_; }

 private:
  Eigen::MatrixXd matrix_;
  std::uint64_t chart_id_;
};

/// Closed-form decomposition g = exp(X_1) ... exp(X_r) for one chart.
using CanonicalPathFn = std::function<GroupPath(const Eigen::MatrixXd&)>;

struct CanonicalPathStrategy {
  std::string id;
  CanonicalPathFn decompose;
};

inline constexpr double kDefaultMembershipTol = 1e-9;
inline constexpr double kFaithfulnessTol = 1e-12;

class GroupChart {
 public:
  /// Validates faithfulness of the embedding and linear independence of the
  /// embedded basis.
  GroupChart(std::shared_ptr<const LieAlgebra> algebra, std::vector<Eigen::MatrixXd> embed,
             std::vector<GroupPath> loops, bool simply_connected, double membership_tol = kDefaultMembershipTol,
             CanonicalPathStrategy canonical = {});

  const LieAlgebra& algebra() const noexcept { return *algebra_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const noexcept { return algebra_; }
  std::size_t matrix_dim() const noexcept { return m_; }
  const std::vector<Eigen::MatrixXd>& embed() const noexcept { return embed_; }
  const std::vector<GroupPath>& loops() const noexcept { return loops_; }
  bool simply_connected() const noexcept { return simply_connected_; }
  double membership_tol() const noexcept { return membership_tol_; }
  std::uint64_t id() const noexcept { return id_; }

  bool has_canonical_paths() const noexcept { return static_cast<bool>(canonical_.decompose); }
  const std::string& canonical_strategy_id() const noexcept { return canonical_.id; }
  /// Throws Error(no_canonical_path) when the chart supplies no strategy.
  GroupPath canonical_path(const GroupElement& g) const;

  Eigen::MatrixXd embedding(const AlgebraVector& x) const;
  /// Coordinates of a matrix in the embedded basis; throws
  /// Error(left_embedded_algebra) if the residual exceeds membership_tol.
  AlgebraVector coordinates(const Eigen::MatrixXd& m) const;

  GroupElement identity() const;
  GroupElement element(Eigen::MatrixXd m) const { return GroupElement(std::move(m), id_); }

  /// Max over i, j of the commutator residual of the embedding.
  double faithfulness_residual() const;

 private:
  std::shared_ptr<const LieAlgebra> algebra_;
  std::size_t m_;
  std::vector<Eigen::MatrixXd> embed_;
  std::vector<GroupPath> loops_;
  bool simply_connected_;
  double membership_tol_;
  CanonicalPathStrategy canonical_;
  std::uint64_t id_;
  Eigen::MatrixXd basis_columns_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> basis_qr_;
};

GroupElement exp(const GroupChart& chart, const AlgebraVector& x);
GroupElement compose(const GroupChart& chart, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupChart& chart, const GroupElement& g);
GroupElement path_endpoint(const GroupChart& chart, const GroupPath& path);

/// Matrix of Ad_g in the algebra basis (column i is Ad_g e_i).
Eigen::MatrixXd adjoint_matrix(const GroupChart& chart, const GroupElement& g);
/// Matrix of Ad*_g on covector coordinates: Ad(g^{-1})^T.
Eigen::MatrixXd coadjoint_matrix(const GroupChart& chart, const GroupElement& g);

AlgebraVector Ad(const GroupChart& chart, const GroupElement& g, const AlgebraVector& x);
/// <Coad(g, alpha), X> = <alpha, Ad(g^{-1}) X>.
Covector Coad(const GroupChart& chart, const GroupElement& g, const Covector& alpha);

}  // namespace liesymp
