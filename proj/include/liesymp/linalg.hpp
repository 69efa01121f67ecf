#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liesymp {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p", or a decimal literal such as "0.25" or "-1e-3" into an
/// exact rational (decimals are read exactly in base ten, not through double).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
/// Exact: every finite double is a dyadic rational.
Rational rational_from_double(double value);
inline double to_double(const Rational& value) { return value.get_d(); }

RationalVector to_rational(const Eigen::VectorXd& v);
Eigen::VectorXd to_eigen(const RationalVector& v);

/// Small dense matrix over the rationals. Elimination is exact; sizes in this
/// library stay in the tens, so no attempt is made at pivot growth control.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rank() const;
  /// Basis of {x : A x = 0}, one vector per free column of the reduced form.
  std::vector<RationalVector> nullspace() const;
  /// Some x with A x = rhs, or nullopt when the system is inconsistent.
  std::optional<RationalVector> solve(const RationalVector& rhs) const;

  RationalMatrix transpose() const;
  /// Horizontal concatenation [this | other].
  RationalMatrix hcat(const RationalMatrix& other) const;
  RationalVector column(std::size_t c) const;
  RationalVector apply(const RationalVector& x) const;

  bool is_zero() const;
  Rational max_abs() const;
  Eigen::MatrixXd to_eigen() const;

 private:
  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> reduce();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline constexpr double kDefaultTolRank = 1e-9;
/// Relative singular values closer than this factor to tol_rank (either side)
/// are refused as indeterminate.
inline constexpr double kRankMarginFactor = 1e3;

struct RankDecision {
  std::size_t rank = 0;
  /// min(smallest kept relative singular value / tol, tol / largest dropped
  /// one); infinity when there is nothing on one side.
  double margin = 0.0;
};

/// Numerical rank with a relative singular-value cutoff. Throws
/// Error(indeterminate_rank) when the margin falls below kRankMarginFactor.
RankDecision numerical_rank(const Eigen::MatrixXd& m, double tol_rank, const char* module);

/// Same decision without throwing; callers inspect margin themselves.
RankDecision numerical_rank_unchecked(const Eigen::MatrixXd& m, double tol_rank);

}  // namespace liesymp
