#include "toricfam/linalg.hpp"

#include <cassert>

namespace toricfam::linalg {

std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

QMat nullspace(QMat m, std::size_t cols) {
  auto pivots = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (auto c : pivots) is_piv[c] = true;
  QMat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_piv[free]) continue;
    QVec v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat det(QMat m) {
  const std::size_t n = m.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

QMat inverse(const QMat& m) {
  const std::size_t n = m.size();
  QMat aug(n, QVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  assert(piv.size() == n && piv.back() == n - 1);
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec vec_mat(const QVec& v, const QMat& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  QVec out(cols, Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += v[i] * m[i][j];
  }
  return out;
}

Int lcm_denominators(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  return l;
}

ZVec primitive_integer(const QVec& v) {
  const Int l = lcm_denominators(v);
  ZVec z(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * l;
    z[i] = scaled.get_num();
    g = gcd(g, z[i]);
  }
  if (g > 1)
    for (auto& x : z) x /= g;
  return z;
}

std::pair<ZMat, std::size_t> row_hermite(ZMat k) {
  const std::size_t rows = k.size();
  const std::size_t cols = rows ? k[0].size() : 0;
  ZMat u(rows, ZVec(rows, Int(0)));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) k[dst][j] -= f * k[src][j];
    for (std::size_t j = 0; j < rows; ++j) u[dst][j] -= f * u[src][j];
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end until one nonzero entry remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (k[i][c] != 0 && (best == rows || abs(k[i][c]) < abs(k[best][c]))) best = i;
      if (best == rows) break;
      std::swap(k[best], k[r]);
      std::swap(u[best], u[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (k[i][c] == 0) continue;
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), k[i][c].get_mpz_t(), k[r][c].get_mpz_t());
        row_op(i, r, f);
        if (k[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (k[r][c] != 0) ++r;
  }
  return {u, r};
}

}  // namespace toricfam::linalg
