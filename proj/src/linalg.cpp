#include "liesymp/linalg.hpp"

#include "liesymp/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace liesymp {

namespace {

Error bad_number(std::string_view text) {
  return Error(ErrorCode::invalid_json, "linalg", "cannot parse rational from '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; });
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) throw bad_number(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw bad_number(text);
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw bad_number(text);
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational result = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) throw bad_number(text);
    mpz_class q(std::string(den), 10);
    if (q == 0) throw bad_number(text);
    mpz_class p(std::string(num_digits), 10);
    if (!num.empty() && num.front() == '-') p = -p;
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::non_finite, "linalg", "non-finite scalar cannot be represented exactly");
  Rational r(value);
  r.canonicalize();
  return r;
}

RationalVector to_rational(const Eigen::VectorXd& v) {
  RationalVector out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rational_from_double(v[i]));
  return out;
}

Eigen::VectorXd to_eigen(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get_d();
  return out;
}

std::vector<std::size_t> RationalMatrix::reduce() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pivot = row;
    while (pivot < rows_ && sgn((*this)(pivot, col)) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(pivot, c), (*this)(row, c));
    const Rational inv = 1 / (*this)(row, col);
    for (std::size_t c = col; c < cols_; ++c) (*this)(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || sgn((*this)(r, col)) == 0) continue;
      const Rational factor = (*this)(r, col);
      for (std::size_t c = col; c < cols_; ++c) (*this)(r, c) -= factor * (*this)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix copy = *this;
  return copy.reduce().size();
}

std::vector<RationalVector> RationalMatrix::nullspace() const {
  RationalMatrix reduced = *this;
  const auto pivots = reduced.reduce();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols_);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> RationalMatrix::solve(const RationalVector& rhs) const {
  if (rhs.size() != rows_)
    throw Error(ErrorCode::dimension_mismatch, "linalg", "right-hand side length does not match row count");
  RationalMatrix augmented(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) augmented(r, c) = (*this)(r, c);
    augmented(r, cols_) = rhs[r];
  }
  const auto pivots = augmented.reduce();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  RationalVector x(cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = augmented(r, cols_);
  return x;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::hcat(const RationalMatrix& other) const {
  if (other.rows_ != rows_)
    throw Error(ErrorCode::dimension_mismatch, "linalg", "hcat of matrices with different row counts");
  RationalMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalVector RationalMatrix::apply(const RationalVector& x) const {
  if (x.size() != cols_)
    throw Error(ErrorCode::dimension_mismatch, "linalg", "vector length does not match column count");
  RationalVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0 && sgn(x[c]) != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational RationalMatrix::max_abs() const {
  Rational best = 0;
  for (const auto& q : data_)
    if (abs(q) > best) best = abs(q);
  return best;
}

Eigen::MatrixXd RationalMatrix::to_eigen() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).get_d();
  return m;
}

RankDecision numerical_rank_unchecked(const Eigen::MatrixXd& m, double tol_rank) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (m.size() == 0) return {0, inf};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double largest = s.size() > 0 ? s[0] : 0.0;
  if (largest == 0.0) return {0, inf};
  RankDecision decision{0, inf};
  double smallest_kept = inf;
  double largest_dropped = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s[i] / largest;
    if (rel > tol_rank) {
      ++decision.rank;
      smallest_kept = std::min(smallest_kept, rel);
    } else {
      largest_dropped = std::max(largest_dropped, rel);
    }
  }
  const double kept_margin = smallest_kept / tol_rank;
  const double dropped_margin = largest_dropped > 0.0 ? tol_rank / largest_dropped : inf;
  decision.margin = std::min(kept_margin, dropped_margin);
  return decision;
}

RankDecision numerical_rank(const Eigen::MatrixXd& m, double tol_rank, const char* module) {
  RankDecision d = numerical_rank_unchecked(m, tol_rank);
  if (d.margin < kRankMarginFactor)
    throw Error(ErrorCode::indeterminate_rank, module,
                "indeterminate rank: singular-value margin " + std::to_string(d.margin) + " below " +
                    std::to_string(kRankMarginFactor) + " around tol_rank " + std::to_string(tol_rank));
  return d;
}

}  // namespace liesymp
