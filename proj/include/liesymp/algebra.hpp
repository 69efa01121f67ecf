#pragma once

// Finite-dimensional Lie algebras given by structure constants, the
// Chevalley-Eilenberg complex in degrees 1-3, H^2 and one-dimensional central
// extensions.
//
// Sign conventions (used everywhere in the library):
//   (d beta)(X, Y)  = -beta([X, Y])
//   (d c)(X, Y, Z)  = -c([X, Y], Z) + c([X, Z], Y) - c([Y, Z], X)
//   <ad*_X alpha, Y> = -<alpha, [X, Y]>

#include "liesymp/linalg.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace liesymp {

enum class ScalarMode { exact, floating };

inline constexpr double kDefaultTolAlg = 1e-12;

struct AlgebraVector {
  Eigen::VectorXd coeffs;

  AlgebraVector() = default;
  explicit AlgebraVector(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static AlgebraVector zero(std::size_t n) { return AlgebraVector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))); }
  static AlgebraVector basis(std::size_t n, std::size_t i) {
    AlgebraVector v = zero(n);
    v.coeffs[static_cast<Eigen::Index>(i)] = 1.0;
    return v;
  }
  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
};

struct Covector {
  Eigen::VectorXd coeffs;

  Covector() = default;
  explicit Covector(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static Covector zero(std::size_t n) { return Covector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))); }
  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
};

inline double pairing(const Covector& alpha, const AlgebraVector& x) { return alpha.coeffs.dot(x.coeffs); }

struct BracketTerm {
  std::size_t k;
  Rational coef;
};

/// [e_i, e_j] = sum of terms, stored only for i < j.
struct BracketEntry {
  std::size_t i;
  std::size_t j;
  std::vector<BracketTerm> terms;
};

class LieAlgebra {
 public:
  /// Validates indices, canonical ordering and the Jacobi identity.
  LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
             ScalarMode mode = ScalarMode::exact, double tol_alg = kDefaultTolAlg);

  /// Skips the Jacobi check (indices are still validated). Used to build
  /// candidate extensions whose Jacobi identity is under test.
  static LieAlgebra unchecked(std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
                              ScalarMode mode = ScalarMode::exact, double tol_alg = kDefaultTolAlg);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis_labels() const noexcept { return basis_; }
  ScalarMode mode() const noexcept { return mode_; }
  double tol_alg() const noexcept { return tol_alg_; }
  /// Canonical sparse table, sorted by (i, j), zero terms dropped.
  const std::vector<BracketEntry>& brackets() const noexcept { return brackets_; }

  /// f^k_{ij} for any ordering of i, j.
  const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const { return dense_[index(i, j, k)]; }
  double structure_value(std::size_t i, std::size_t j, std::size_t k) const { return dense_values_[index(i, j, k)]; }
  double max_structure_constant() const noexcept { return max_abs_structure_; }

  /// Max over (i,j,k,l) of |cyclic sum|; exact in rational arithmetic.
  Rational jacobi_residual_exact() const;
  double jacobi_residual() const { return jacobi_residual_exact().get_d(); }
  bool satisfies_jacobi() const;

  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Structure constants as exact rationals; float mode only changes how
  /// decisions are made, not the stored values.
  bool same_structure(const LieAlgebra& other) const;

 private:
  struct NoCheck {};
  LieAlgebra(NoCheck, std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
             ScalarMode mode, double tol_alg);

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim() + j) * dim() + k; }

  std::string name_;
  std::vector<std::string> basis_;
  std::vector<BracketEntry> brackets_;
  ScalarMode mode_;
  double tol_alg_;
  std::vector<Rational> dense_;
  std::vector<double> dense_values_;
  double max_abs_structure_ = 0.0;
};

AlgebraVector bracket(const LieAlgebra& algebra, const AlgebraVector& x, const AlgebraVector& y);
RationalVector bracket(const LieAlgebra& algebra, const RationalVector& x, const RationalVector& y);

/// Matrix of ad_X in the basis: column j is [X, e_j].
Eigen::MatrixXd ad_matrix(const LieAlgebra& algebra, const AlgebraVector& x);

/// Skew bilinear form on the algebra; stored exactly.
class TwoCochain {
 public:
  TwoCochain() = default;
  explicit TwoCochain(std::size_t n) : n_(n), values_(n * n) {}

  /// Throws Error(not_skew) unless c_ij = -c_ji exactly.
  static TwoCochain from_matrix(const RationalMatrix& m);
  /// Exact conversion of each double; skewness required exactly.
  static TwoCochain from_values(const Eigen::MatrixXd& m);

  std::size_t dim() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  /// Sets c_ij and c_ji = -value together.
  void set(std::size_t i, std::size_t j, const Rational& value);

  Eigen::MatrixXd values() const;
  RationalMatrix matrix() const;
  bool is_zero() const;
  /// Frobenius norm.
  double norm() const;

  /// c(X, Y) summed over i < j as c_ij (x_i y_j - x_j y_i) so c(X, X) is exactly 0.
  double evaluate(const AlgebraVector& x, const AlgebraVector& y) const;
  Rational evaluate(const RationalVector& x, const RationalVector& y) const;
  /// The covector c(X, .).
  Covector contract(const AlgebraVector& x) const;

  bool operator==(const TwoCochain& other) const { return n_ == other.n_ && values_ == other.values_; }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> values_;
};

/// Alternating trilinear form, stored densely.
class ThreeCochain {
 public:
  explicit ThreeCochain(std::size_t n) : n_(n), values_(n * n * n) {}
  std::size_t dim() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return values_[(i * n_ + j) * n_ + k]; }
  /// Writes all six permutations with the alternating sign.
  void set_alternating(std::size_t i, std::size_t j, std::size_t k, const Rational& value);
  bool is_zero() const;
  Rational max_abs() const;

 private:
  std::size_t n_;
  std::vector<Rational> values_;
};

TwoCochain ce_d1(const LieAlgebra& algebra, const RationalVector& beta);
TwoCochain ce_d1(const LieAlgebra& algebra, const Covector& beta);
ThreeCochain ce_d2(const LieAlgebra& algebra, const TwoCochain& c);

/// Exact in exact mode; float mode compares |dc| against tol_alg scaled by the
/// magnitudes of c and of the structure constants.
bool is_cocycle(const LieAlgebra& algebra, const TwoCochain& c);

struct CoboundaryDecision {
  std::optional<RationalVector> witness;
  /// Infinity in exact mode.
  double margin;
};

CoboundaryDecision coboundary_decision(const LieAlgebra& algebra, const TwoCochain& c,
                                       double tol_rank = kDefaultTolRank);
/// A covector beta with ce_d1(beta) == c, or nullopt.
std::optional<RationalVector> is_coboundary(const LieAlgebra& algebra, const TwoCochain& c,
                                            double tol_rank = kDefaultTolRank);

struct CohomologyReport {
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::size_t dim_h2 = 0;
  std::vector<TwoCochain> representatives;
  double margin = 0.0;
};

CohomologyReport cohomology_h2(const LieAlgebra& algebra, double tol_rank = kDefaultTolRank);

struct CentralExtension {
  LieAlgebra base;
  TwoCochain cocycle;
  LieAlgebra extended;
};

/// Throws Error(not_cocycle) naming the offending triple and residual.
CentralExtension central_extend(const LieAlgebra& algebra, const TwoCochain& c);
/// The bracket table of g + R with cochain c, without any closedness check.
LieAlgebra extension_algebra_unchecked(const LieAlgebra& algebra, const TwoCochain& c);

// Coordinates on cochain spaces: 2-cochains by pairs i<j, 3-cochains by
// triples i<j<k, both in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> cochain_pairs(std::size_t n);
std::vector<std::array<std::size_t, 3>> cochain_triples(std::size_t n);
/// Rows: pairs; columns: covector coordinates.
RationalMatrix d1_matrix(const LieAlgebra& algebra);
/// Rows: triples; columns: pairs.
RationalMatrix d2_matrix(const LieAlgebra& algebra);
RationalVector pair_coordinates(const TwoCochain& c);
TwoCochain cochain_from_pair_coordinates(std::size_t n, const RationalVector& coords);

}  // namespace liesymp
