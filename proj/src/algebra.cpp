#include "liesymp/algebra.hpp"

#include "liesymp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace liesymp {

namespace {

constexpr const char* kModule = "algebra";

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << ": expected dimension " << expected << ", got " << got;
    throw Error(ErrorCode::dimension_mismatch, kModule, os.str());
  }
}

std::vector<BracketEntry> canonicalize(std::size_t n, std::vector<BracketEntry> entries) {
  std::vector<BracketEntry> out;
  for (auto& e : entries) {
    if (e.i >= n || e.j >= n) {
      std::ostringstream os;
      os << "bracket index (" << e.i << "," << e.j << ") out of range for dim " << n;
      throw Error(ErrorCode::invalid_structure, kModule, os.str());
    }
    if (e.i >= e.j) {
      std::ostringstream os;
      os << "bracket entries must use i<j ordering, got (" << e.i << "," << e.j << ")";
      throw Error(ErrorCode::invalid_structure, kModule, os.str());
    }
    std::vector<BracketTerm> merged;
    for (auto& t : e.terms) {
      if (t.k >= n) {
        std::ostringstream os;
        os << "bracket (" << e.i << "," << e.j << ") has term index " << t.k << " out of range";
        throw Error(ErrorCode::invalid_structure, kModule, os.str());
      }
      auto it = std::find_if(merged.begin(), merged.end(), [&](const BracketTerm& m) { return m.k == t.k; });
      if (it == merged.end())
        merged.push_back(std::move(t));
      else
        it->coef += t.coef;
    }
    std::erase_if(merged, [](const BracketTerm& t) { return sgn(t.coef) == 0; });
    std::sort(merged.begin(), merged.end(), [](const BracketTerm& a, const BracketTerm& b) { return a.k < b.k; });
    if (merged.empty()) continue;
    out.push_back(BracketEntry{e.i, e.j, std::move(merged)});
  }
  std::sort(out.begin(), out.end(),
            [](const BracketEntry& a, const BracketEntry& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t p = 1; p < out.size(); ++p)
    if (out[p].i == out[p - 1].i && out[p].j == out[p - 1].j) {
      std::ostringstream os;
      os << "bracket (" << out[p].i << "," << out[p].j << ") given twice";
      throw Error(ErrorCode::invalid_structure, kModule, os.str());
    }
  return out;
}

// Value of c(m, k) from the canonical pair storage.
const Rational& cochain_entry(const TwoCochain& c, std::size_t m, std::size_t k) { return c(m, k); }

}  // namespace

LieAlgebra::LieAlgebra(NoCheck, std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
                       ScalarMode mode, double tol_alg)
    : name_(std::move(name)), basis_(std::move(basis)), mode_(mode), tol_alg_(tol_alg) {
  const std::size_t n = basis_.size();
  brackets_ = canonicalize(n, std::move(brackets));
  dense_.assign(n * n * n, Rational(0));
  dense_values_.assign(n * n * n, 0.0);
  for (const auto& e : brackets_)
    for (const auto& t : e.terms) {
      dense_[index(e.i, e.j, t.k)] = t.coef;
      dense_[index(e.j, e.i, t.k)] = -t.coef;
      dense_values_[index(e.i, e.j, t.k)] = t.coef.get_d();
      dense_values_[index(e.j, e.i, t.k)] = -t.coef.get_d();
      max_abs_structure_ = std::max(max_abs_structure_, std::abs(t.coef.get_d()));
    }
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
                       ScalarMode mode, double tol_alg)
    : LieAlgebra(NoCheck{}, std::move(name), std::move(basis), std::move(brackets), mode, tol_alg) {
  if (!satisfies_jacobi()) {
    std::ostringstream os;
    os << "algebra '" << name_ << "' violates the Jacobi identity (residual " << jacobi_residual() << ")";
    throw Error(ErrorCode::invalid_structure, kModule, os.str());
  }
}

LieAlgebra LieAlgebra::unchecked(std::string name, std::vector<std::string> basis, std::vector<BracketEntry> brackets,
                                 ScalarMode mode, double tol_alg) {
  return LieAlgebra(NoCheck{}, std::move(name), std::move(basis), std::move(brackets), mode, tol_alg);
}

Rational LieAlgebra::jacobi_residual_exact() const {
  const std::size_t n = dim();
  Rational worst = 0;
  // The cyclic sum is alternating in (i, j, k), so i < j < k suffices.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Rational sum = 0;
          for (std::size_t m = 0; m < n; ++m) {
            sum += structure(i, j, m) * structure(m, k, l);
            sum += structure(j, k, m) * structure(m, i, l);
            sum += structure(k, i, m) * structure(m, j, l);
          }
          if (abs(sum) > worst) worst = abs(sum);
        }
  return worst;
}

bool LieAlgebra::satisfies_jacobi() const {
  const Rational residual = jacobi_residual_exact();
  if (mode_ == ScalarMode::exact) return sgn(residual) == 0;
  const double scale = std::max(1.0, max_abs_structure_ * max_abs_structure_);
  return residual.get_d() <= tol_alg_ * scale;
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(basis_.begin(), basis_.end(), label);
  if (it == basis_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const { return dim() == other.dim() && dense_ == other.dense_; }

AlgebraVector bracket(const LieAlgebra& algebra, const AlgebraVector& x, const AlgebraVector& y) {
  require_dim(algebra.dim(), x.size(), "bracket");
  require_dim(algebra.dim(), y.size(), "bracket");
  AlgebraVector out = AlgebraVector::zero(algebra.dim());
  for (const auto& e : algebra.brackets()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double w = x.coeffs[i] * y.coeffs[j] - x.coeffs[j] * y.coeffs[i];
    if (w == 0.0) continue;
    for (const auto& t : e.terms) out.coeffs[static_cast<Eigen::Index>(t.k)] += w * t.coef.get_d();
  }
  return out;
}

RationalVector bracket(const LieAlgebra& algebra, const RationalVector& x, const RationalVector& y) {
  require_dim(algebra.dim(), x.size(), "bracket");
  require_dim(algebra.dim(), y.size(), "bracket");
  RationalVector out(algebra.dim());
  for (const auto& e : algebra.brackets()) {
    const Rational w = x[e.i] * y[e.j] - x[e.j] * y[e.i];
    if (sgn(w) == 0) continue;
    for (const auto& t : e.terms) out[t.k] += w * t.coef;
  }
  return out;
}

Eigen::MatrixXd ad_matrix(const LieAlgebra& algebra, const AlgebraVector& x) {
  const std::size_t n = algebra.dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) m.col(static_cast<Eigen::Index>(j)) = bracket(algebra, x, AlgebraVector::basis(n, j)).coeffs;
  return m;
}

TwoCochain TwoCochain::from_matrix(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::dimension_mismatch, kModule, "2-cochain matrix must be square");
  TwoCochain c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) {
        std::ostringstream os;
        os << "2-cochain is not skew at (" << i << "," << j << ")";
        throw Error(ErrorCode::not_skew, kModule, os.str());
      }
      c.values_[i * c.n_ + j] = m(i, j);
    }
  return c;
}

TwoCochain TwoCochain::from_values(const Eigen::MatrixXd& m) {
  RationalMatrix q(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = rational_from_double(m(i, j));
  return from_matrix(q);
}

void TwoCochain::set(std::size_t i, std::size_t j, const Rational& value) {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::dimension_mismatch, kModule, "2-cochain index out of range");
  if (i == j) {
    if (sgn(value) != 0) throw Error(ErrorCode::not_skew, kModule, "2-cochain diagonal must vanish");
    return;
  }
  values_[i * n_ + j] = value;
  values_[j * n_ + i] = -value;
}

Eigen::MatrixXd TwoCochain::values() const { return matrix().to_eigen(); }

RationalMatrix TwoCochain::matrix() const {
  RationalMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = values_[i * n_ + j];
  return m;
}

bool TwoCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

double TwoCochain::norm() const {
  double sum = 0.0;
  for (const auto& q : values_) sum += q.get_d() * q.get_d();
  return std::sqrt(sum);
}

double TwoCochain::evaluate(const AlgebraVector& x, const AlgebraVector& y) const {
  require_dim(n_, x.size(), "cochain evaluate");
  require_dim(n_, y.size(), "cochain evaluate");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double cij = values_[i * n_ + j].get_d();
      if (cij == 0.0) continue;
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      sum += cij * (x.coeffs[a] * y.coeffs[b] - x.coeffs[b] * y.coeffs[a]);
    }
  return sum;
}

Rational TwoCochain::evaluate(const RationalVector& x, const RationalVector& y) const {
  require_dim(n_, x.size(), "cochain evaluate");
  require_dim(n_, y.size(), "cochain evaluate");
  Rational sum = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Rational& cij = values_[i * n_ + j];
      if (sgn(cij) == 0) continue;
      sum += cij * (x[i] * y[j] - x[j] * y[i]);
    }
  return sum;
}

Covector TwoCochain::contract(const AlgebraVector& x) const {
  require_dim(n_, x.size(), "cochain contract");
  Covector out = Covector::zero(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double xi = x.coeffs[static_cast<Eigen::Index>(i)];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) out.coeffs[static_cast<Eigen::Index>(j)] += xi * values_[i * n_ + j].get_d();
  }
  return out;
}

void ThreeCochain::set_alternating(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  auto at = [this](std::size_t a, std::size_t b, std::size_t c) -> Rational& { return values_[(a * n_ + b) * n_ + c]; };
  at(i, j, k) = value;
  at(j, k, i) = value;
  at(k, i, j) = value;
  at(j, i, k) = -value;
  at(i, k, j) = -value;
  at(k, j, i) = -value;
}

bool ThreeCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational ThreeCochain::max_abs() const {
  Rational best = 0;
  for (const auto& q : values_)
    if (abs(q) > best) best = abs(q);
  return best;
}

TwoCochain ce_d1(const LieAlgebra& algebra, const RationalVector& beta) {
  require_dim(algebra.dim(), beta.size(), "ce_d1");
  TwoCochain out(algebra.dim());
  for (const auto& e : algebra.brackets()) {
    Rational value = 0;
    for (const auto& t : e.terms) value -= beta[t.k] * t.coef;
    out.set(e.i, e.j, value);
  }
  return out;
}

TwoCochain ce_d1(const LieAlgebra& algebra, const Covector& beta) { return ce_d1(algebra, to_rational(beta.coeffs)); }

ThreeCochain ce_d2(const LieAlgebra& algebra, const TwoCochain& c) {
  const std::size_t n = algebra.dim();
  require_dim(n, c.dim(), "ce_d2");
  ThreeCochain out(n);
  // -c([e_i,e_j], e_k) + c([e_i,e_k], e_j) - c([e_j,e_k], e_i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Rational value = 0;
        for (std::size_t m = 0; m < n; ++m) {
          if (sgn(algebra.structure(i, j, m)) != 0) value -= algebra.structure(i, j, m) * cochain_entry(c, m, k);
          if (sgn(algebra.structure(i, k, m)) != 0) value += algebra.structure(i, k, m) * cochain_entry(c, m, j);
          if (sgn(algebra.structure(j, k, m)) != 0) value -= algebra.structure(j, k, m) * cochain_entry(c, m, i);
        }
        if (sgn(value) != 0) out.set_alternating(i, j, k, value);
      }
  return out;
}

namespace {

double cocycle_tolerance(const LieAlgebra& algebra, const TwoCochain& c) {
  double max_c = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) max_c = std::max(max_c, std::abs(c(i, j).get_d()));
  return algebra.tol_alg() * std::max(1.0, max_c) * std::max(1.0, algebra.max_structure_constant());
}

}  // namespace

bool is_cocycle(const LieAlgebra& algebra, const TwoCochain& c) {
  const ThreeCochain dc = ce_d2(algebra, c);
  if (algebra.mode() == ScalarMode::exact) return dc.is_zero();
  return dc.max_abs().get_d() <= cocycle_tolerance(algebra, c);
}

std::vector<std::pair<std::size_t, std::size_t>> cochain_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

std::vector<std::array<std::size_t, 3>> cochain_triples(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  return triples;
}

RationalMatrix d1_matrix(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  const auto pairs = cochain_pairs(n);
  RationalMatrix m(pairs.size(), n);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t k = 0; k < n; ++k) m(p, k) = -algebra.structure(pairs[p].first, pairs[p].second, k);
  return m;
}

RationalMatrix d2_matrix(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  const auto pairs = cochain_pairs(n);
  const auto triples = cochain_triples(n);
  RationalMatrix m(triples.size(), pairs.size());
  // Column p is d applied to the elementary cochain with c(a,b) = 1 = -c(b,a).
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    TwoCochain elementary(n);
    elementary.set(pairs[p].first, pairs[p].second, 1);
    const ThreeCochain dc = ce_d2(algebra, elementary);
    for (std::size_t t = 0; t < triples.size(); ++t) m(t, p) = dc(triples[t][0], triples[t][1], triples[t][2]);
  }
  return m;
}

RationalVector pair_coordinates(const TwoCochain& c) {
  const auto pairs = cochain_pairs(c.dim());
  RationalVector v(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) v[p] = c(pairs[p].first, pairs[p].second);
  return v;
}

TwoCochain cochain_from_pair_coordinates(std::size_t n, const RationalVector& coords) {
  const auto pairs = cochain_pairs(n);
  require_dim(pairs.size(), coords.size(), "pair coordinates");
  TwoCochain c(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) c.set(pairs[p].first, pairs[p].second, coords[p]);
  return c;
}

CoboundaryDecision coboundary_decision(const LieAlgebra& algebra, const TwoCochain& c, double tol_rank) {
  require_dim(algebra.dim(), c.dim(), "is_coboundary");
  const RationalMatrix d1 = d1_matrix(algebra);
  const RationalVector target = pair_coordinates(c);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (algebra.mode() == ScalarMode::exact) return {d1.solve(target), inf};

  const Eigen::MatrixXd a = d1.to_eigen();
  const Eigen::VectorXd b = to_eigen(target);
  if (a.rows() == 0) return {RationalVector(algebra.dim()), inf};
  Eigen::MatrixXd augmented(a.rows(), a.cols() + 1);
  augmented << a, b;
  const RankDecision base = numerical_rank(a, tol_rank, kModule);
  const RankDecision with_target = numerical_rank(augmented, tol_rank, kModule);
  const double margin = std::min(base.margin, with_target.margin);
  if (with_target.rank > base.rank) return {std::nullopt, margin};
  const Eigen::VectorXd beta = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  return {to_rational(beta), margin};
}

std::optional<RationalVector> is_coboundary(const LieAlgebra& algebra, const TwoCochain& c, double tol_rank) {
  return coboundary_decision(algebra, c, tol_rank).witness;
}

namespace {

CohomologyReport exact_h2(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  CohomologyReport report;
  report.margin = std::numeric_limits<double>::infinity();
  if (n < 2) return report;
  const RationalMatrix d1 = d1_matrix(algebra);
  const RationalMatrix d2 = d2_matrix(algebra);
  const auto pairs = cochain_pairs(n);
  std::vector<RationalVector> kernel;
  if (d2.rows() == 0) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      RationalVector v(pairs.size());
      v[p] = 1;
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = d2.nullspace();
  }
  report.dim_cocycles = kernel.size();
  report.dim_coboundaries = d1.rank();
  report.dim_h2 = report.dim_cocycles - report.dim_coboundaries;

  RationalMatrix span = d1;
  std::size_t span_rank = report.dim_coboundaries;
  for (const auto& v : kernel) {
    if (report.representatives.size() == report.dim_h2) break;
    RationalMatrix col(v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) col(r, 0) = v[r];
    RationalMatrix candidate = span.hcat(col);
    const std::size_t r = candidate.rank();
    if (r > span_rank) {
      span = std::move(candidate);
      span_rank = r;
      report.representatives.push_back(cochain_from_pair_coordinates(n, v));
    }
  }
  return report;
}

CohomologyReport float_h2(const LieAlgebra& algebra, double tol_rank) {
  const std::size_t n = algebra.dim();
  CohomologyReport report;
  report.margin = std::numeric_limits<double>::infinity();
  if (n < 2) return report;
  const Eigen::MatrixXd d1 = d1_matrix(algebra).to_eigen();
  const Eigen::MatrixXd d2 = d2_matrix(algebra).to_eigen();
  const auto p = static_cast<Eigen::Index>(cochain_pairs(n).size());

  const RankDecision r1 = numerical_rank(d1, tol_rank, kModule);
  Eigen::MatrixXd kernel;
  if (d2.rows() == 0) {
    kernel = Eigen::MatrixXd::Identity(p, p);
    report.dim_cocycles = static_cast<std::size_t>(p);
  } else {
    const RankDecision r2 = numerical_rank(d2, tol_rank, kModule);
    report.margin = std::min(report.margin, r2.margin);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d2, Eigen::ComputeFullV);
    const auto k = p - static_cast<Eigen::Index>(r2.rank);
    kernel = svd.matrixV().rightCols(k);
    report.dim_cocycles = static_cast<std::size_t>(k);
  }
  report.margin = std::min(report.margin, r1.margin);
  report.dim_coboundaries = r1.rank;
  if (report.dim_coboundaries > report.dim_cocycles)
    throw Error(ErrorCode::indeterminate_rank, kModule, "coboundary rank exceeds cocycle dimension; tolerance too loose");
  report.dim_h2 = report.dim_cocycles - report.dim_coboundaries;
  if (report.dim_h2 == 0) return report;

  Eigen::MatrixXd image_basis;
  if (r1.rank > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd1(d1, Eigen::ComputeThinU);
    image_basis = svd1.matrixU().leftCols(static_cast<Eigen::Index>(r1.rank));
  } else {
    image_basis = Eigen::MatrixXd::Zero(p, 0);
  }
  const Eigen::MatrixXd projected = kernel - image_basis * (image_basis.transpose() * kernel);
  Eigen::JacobiSVD<Eigen::MatrixXd> svdp(projected, Eigen::ComputeThinU);
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(report.dim_h2); ++r)
    report.representatives.push_back(cochain_from_pair_coordinates(n, to_rational(svdp.matrixU().col(r))));
  return report;
}

}  // namespace

CohomologyReport cohomology_h2(const LieAlgebra& algebra, double tol_rank) {
  return algebra.mode() == ScalarMode::exact ? exact_h2(algebra) : float_h2(algebra, tol_rank);
}

LieAlgebra extension_algebra_unchecked(const LieAlgebra& algebra, const TwoCochain& c) {
  const std::size_t n = algebra.dim();
  require_dim(n, c.dim(), "central_extend");
  std::vector<std::string> basis = algebra.basis_labels();
  std::string central = "Z";
  while (std::find(basis.begin(), basis.end(), central) != basis.end()) central += "'";
  basis.push_back(central);
  std::vector<BracketEntry> entries = algebra.brackets();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sgn(c(i, j)) == 0) continue;
      auto it = std::find_if(entries.begin(), entries.end(), [&](const BracketEntry& e) { return e.i == i && e.j == j; });
      if (it == entries.end())
        entries.push_back(BracketEntry{i, j, {BracketTerm{n, c(i, j)}}});
      else
        it->terms.push_back(BracketTerm{n, c(i, j)});
    }
  return LieAlgebra::unchecked(algebra.name() + "_ext", std::move(basis), std::move(entries), algebra.mode(),
                               algebra.tol_alg());
}

CentralExtension central_extend(const LieAlgebra& algebra, const TwoCochain& c) {
  require_dim(algebra.dim(), c.dim(), "central_extend");
  if (!is_cocycle(algebra, c)) {
    const ThreeCochain dc = ce_d2(algebra, c);
    std::array<std::size_t, 3> worst{0, 0, 0};
    Rational worst_value = -1;
    for (const auto& t : cochain_triples(algebra.dim()))
      if (abs(dc(t[0], t[1], t[2])) > worst_value) {
        worst_value = abs(dc(t[0], t[1], t[2]));
        worst = t;
      }
    std::ostringstream os;
    const auto& labels = algebra.basis_labels();
    os << "cochain is not closed: (dc)(" << labels[worst[0]] << ", " << labels[worst[1]] << ", " << labels[worst[2]]
       << ") = " << to_string(Rational(dc(worst[0], worst[1], worst[2])));
    throw Error(ErrorCode::not_cocycle, kModule, os.str());
  }
  LieAlgebra extended = extension_algebra_unchecked(algebra, c);
  if (!extended.satisfies_jacobi())
    throw Error(ErrorCode::invariant_failure, kModule, "extension of a closed cochain failed the Jacobi identity");
  return CentralExtension{algebra, c, std::move(extended)};
}

}  // namespace liesymp
