#include "toricfam/cycmat.hpp"

#include "toricfam/error.hpp"

namespace toricfam::cycmat {

CycMat zero(std::size_t rows, std::size_t cols, long p) {
  return CycMat(rows, std::vector<CycRat>(cols, CycRat(p)));
}

CycMat identity(std::size_t n, long p) {
  CycMat m = zero(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = CycRat(p, 1);
  return m;
}

CycMat mul(const CycMat& a, const CycMat& b) {
  if (a.empty() || b.empty()) return {};
  const long p = a[0][0].prime();
  CycMat r = zero(a.size(), b[0].size(), p);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

CycMat kron(const CycMat& a, const CycMat& b) {
  if (a.empty() || b.empty()) return {};
  const long p = a[0][0].prime();
  const std::size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
  CycMat r = zero(ra * rb, ca * cb, p);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j) {
      if (a[i][j].is_zero()) continue;
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l)
          if (!b[k][l].is_zero()) r[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    }
  return r;
}

CycRat det(CycMat m) {
  const std::size_t n = m.size();
  if (n == 0) return CycRat(2, 1);
  const long p = m[0][0].prime();
  CycRat d(p, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return CycRat(p);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    const CycRat inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const CycRat f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

std::optional<std::vector<CycRat>> solve(CycMat a, std::vector<CycRat> b) {
  const std::size_t rows = a.size();
  if (rows != b.size()) throw Error(Errc::DimensionMismatch, "solve: row count");
  if (rows == 0) return std::vector<CycRat>{};
  const std::size_t cols = a[0].size();
  const long p = b[0].prime();
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const CycRat inv = a[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const CycRat f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<CycRat> x(cols, CycRat(p));
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i];
  return x;
}

std::vector<CycRat> charpoly(const CycMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return {CycRat(2, 1)};
  const long p = m[0][0].prime();
  std::vector<CycRat> v{CycRat(p, 1), -m[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a, -R S, -R A S, ..., -R A^{r-1} S
    std::vector<CycRat> t{CycRat(p, 1), -m[r][r]};
    std::vector<CycRat> x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = m[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      CycRat acc(p);
      for (std::size_t i = 0; i < r; ++i)
        if (!m[r][i].is_zero() && !x[i].is_zero()) acc += m[r][i] * x[i];
      t.push_back(-acc);
      if (k + 1 < r) {
        std::vector<CycRat> y(r, CycRat(p));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!m[i][j].is_zero() && !x[j].is_zero()) y[i] += m[i][j] * x[j];
        x = std::move(y);
      }
    }
    std::vector<CycRat> nv(r + 2, CycRat(p));
    for (std::size_t i = 0; i < nv.size(); ++i)
      for (std::size_t j = 0; j < v.size() && j <= i; ++j)
        if (!t[i - j].is_zero() && !v[j].is_zero()) nv[i] += t[i - j] * v[j];
    v = std::move(nv);
  }
  return v;
}

CycMat companion_of_reciprocal(const std::vector<CycRat>& c) {
  const std::size_t N = c.size() - 1;
  const long p = c[0].prime();
  CycMat m = zero(N, N, p);
  // x^N + c_1 x^{N-1} + ... + c_N; the last column carries -c_{N-i}
  for (std::size_t i = 1; i < N; ++i) m[i][i - 1] = CycRat(p, 1);
  for (std::size_t i = 0; i < N; ++i) m[i][N - 1] = -c[N - i];
  return m;
}

}  // namespace toricfam::cycmat
