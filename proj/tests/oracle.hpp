#pragma once

// Brute-force reference computations that share no code with the library:
// plain structure-constant tables, boost::rational<long long> elimination and
// dense loops over ordered index tuples.

#include <boost/rational.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Q = boost::rational<long long>;

/// f[i][j][k] = coefficient of e_k in [e_i, e_j], stored for every ordered pair.
struct Table {
  std::size_t n = 0;
  std::vector<Q> f;

  explicit Table(std::size_t dim) : n(dim), f(dim * dim * dim) {}
  Q& at(std::size_t i, std::size_t j, std::size_t k) { return f[(i * n + j) * n + k]; }
  Q at(std::size_t i, std::size_t j, std::size_t k) const { return f[(i * n + j) * n + k]; }
  /// Sets [e_i, e_j] = coef e_k and [e_j, e_i] = -coef e_k.
  void put(std::size_t i, std::size_t j, std::size_t k, long long coef) {
    at(i, j, k) += coef;
    at(j, i, k) -= coef;
  }
};

inline Table abelian2() { return Table(2); }

inline Table heisenberg3() {
  Table t(3);
  t.put(0, 1, 2, 1);
  return t;
}

inline Table sl2() {
  Table t(3);  // H, E, F
  t.put(0, 1, 1, 2);
  t.put(0, 2, 2, -2);
  t.put(1, 2, 0, 1);
  return t;
}

inline Table se2() {
  Table t(3);  // J, P1, P2
  t.put(0, 1, 2, 1);
  t.put(0, 2, 1, -1);
  return t;
}

inline Table galilei_1_1() {
  Table t(3);  // H, B, P with [B, H] = P
  t.put(1, 0, 2, 1);
  return t;
}

inline Table oscillator() {
  Table t(4);  // J, P1, P2, Z
  t.put(0, 1, 2, 1);
  t.put(0, 2, 1, -1);
  t.put(1, 2, 3, 1);
  return t;
}

inline std::map<std::string, Table> tables() {
  return {{"abelian2", abelian2()}, {"heisenberg3", heisenberg3()}, {"sl2", sl2()},
          {"se2", se2()},           {"galilei_1_1", galilei_1_1()}, {"oscillator", oscillator()}};
}

inline std::size_t rank(std::vector<std::vector<Q>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == Q(0)) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == Q(0)) continue;
      const Q factor = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= factor * m[r][k];
    }
    ++r;
  }
  return r;
}

/// Skew 2-cochain as a dense n x n table.
using Cochain = std::vector<std::vector<Q>>;

/// (dc)(x, y, z) = -c([x,y], z) + c([x,z], y) - c([y,z], x) on basis vectors.
inline Q d2(const Table& t, const Cochain& c, std::size_t x, std::size_t y, std::size_t z) {
  Q out = 0;
  for (std::size_t k = 0; k < t.n; ++k)
    out += -t.at(x, y, k) * c[k][z] + t.at(x, z, k) * c[k][y] - t.at(y, z, k) * c[k][x];
  return out;
}

struct Cohomology {
  std::size_t cocycles;
  std::size_t coboundaries;
  std::size_t h2;
};

/// dim Z^2 from the kernel of d2 acting on the dense basis E_ab - E_ba, with
/// every ordered triple (x, y, z) as a row; dim B^2 from the images d(e^l).
inline Cohomology h2(const Table& t) {
  const std::size_t n = t.n;
  std::vector<Cochain> basis;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Cochain c(n, std::vector<Q>(n));
      c[a][b] = 1;
      c[b][a] = -1;
      basis.push_back(c);
    }

  std::vector<std::vector<Q>> rows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        std::vector<Q> row;
        for (const auto& c : basis) row.push_back(d2(t, c, x, y, z));
        rows.push_back(row);
      }
  const std::size_t cocycles = basis.size() - (rows.empty() ? 0 : rank(rows));

  // Coboundaries as vectors of all n*n entries, so no coordinate convention is shared.
  std::vector<std::vector<Q>> images;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<Q> image;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) image.push_back(-t.at(x, y, l));
    images.push_back(image);
  }
  const std::size_t coboundaries = rank(images);
  return {cocycles, coboundaries, cocycles - coboundaries};
}

inline Q jacobi_residual(const Table& t) {
  Q worst = 0;
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y)
      for (std::size_t z = 0; z < t.n; ++z)
        for (std::size_t l = 0; l < t.n; ++l) {
          Q s = 0;
          for (std::size_t k = 0; k < t.n; ++k)
            s += t.at(x, y, k) * t.at(k, z, l) + t.at(y, z, k) * t.at(k, x, l) + t.at(z, x, k) * t.at(k, y, l);
          worst = std::max(worst, boost::abs(s));
        }
  return worst;
}

}  // namespace oracle
