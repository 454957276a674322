#include <gtest/gtest.h>

#include <random>
#include <set>

#include "toricfam/error.hpp"
#include "toricfam/ffield.hpp"

using namespace toricfam;

TEST(FpPoly, Irreducibility) {
  EXPECT_TRUE(fp_poly::is_irreducible({1, 1, 1}, 2));
  EXPECT_FALSE(fp_poly::is_irreducible({1, 0, 1}, 2));
  EXPECT_TRUE(fp_poly::is_irreducible({1, 1, 0, 1}, 2));
  EXPECT_FALSE(fp_poly::is_irreducible({1, 0, 1}, 5));  // x^2+1 = (x-2)(x-3)
  EXPECT_TRUE(fp_poly::is_irreducible({2, 0, 1}, 5));
  // x^4+x^3+x^2+x+1 is irreducible over F_2 but x has order 5
  EXPECT_TRUE(fp_poly::is_irreducible({1, 1, 1, 1, 1}, 2));
  EXPECT_FALSE(fp_poly::is_primitive({1, 1, 1, 1, 1}, 2));
  EXPECT_TRUE(fp_poly::is_primitive({1, 1, 0, 0, 1}, 2));
}

TEST(FpPoly, IrreducibleCountMatchesNecklace) {
  // monic irreducibles of degree m over F_p: (1/m) sum mu(m/d) p^d
  for (int p : {2, 3}) {
    for (int m = 1; m <= 5; ++m) {
      long count = 0;
      long total = 1;
      for (int i = 0; i < m; ++i) total *= p;
      for (long c = 0; c < total; ++c) {
        fp_poly::Poly f(static_cast<std::size_t>(m + 1));
        long v = c;
        for (int i = 0; i < m; ++i) {
          f[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
          v /= p;
        }
        f[static_cast<std::size_t>(m)] = 1;
        if (fp_poly::is_irreducible(f, p)) ++count;
      }
      EXPECT_EQ(static_cast<std::uint64_t>(count), closed_point_count(static_cast<std::uint64_t>(p), SpaceKind::Affine, 1, m))
          << p << " " << m;
    }
  }
}

TEST(FieldLevel, F4) {
  FieldLevel F(2, 2, {1, 1, 1});
  EXPECT_EQ(F.size(), 4u);
  const Elem w = 2;  // x
  EXPECT_EQ(F.mul(w, w), 3u);      // x^2 = x + 1
  EXPECT_EQ(F.mul(w, 3u), 1u);     // x(x+1) = 1
  EXPECT_EQ(F.trace(w), 1);
  EXPECT_EQ(F.trace(1), 0);
  EXPECT_EQ(F.frobenius(w), 3u);
}

TEST(FieldLevel, FieldAxiomsRandom) {
  std::mt19937_64 rng(7);
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 5}, {3, 3}, {5, 2}, {7, 1}}) {
    FieldLevel F(p, m, default_modulus(p, m));
    std::uniform_int_distribution<Elem> d(0, F.size() - 1);
    for (int it = 0; it < 300; ++it) {
      const Elem a = d(rng), b = d(rng), c = d(rng);
      EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      EXPECT_EQ(F.sub(F.add(a, b), b), a);
      EXPECT_EQ(F.trace(F.add(a, b)), (F.trace(a) + F.trace(b)) % p);
      EXPECT_EQ(F.trace(F.frobenius(a)), F.trace(a));
      EXPECT_EQ(F.pow(a, static_cast<std::int64_t>(F.size())), a);
      if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      // Frobenius is additive
      EXPECT_EQ(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)));
    }
    // trace is onto F_p with equal fibres
    std::vector<int> fib(static_cast<std::size_t>(p), 0);
    for (Elem x = 0; x < F.size(); ++x) ++fib[static_cast<std::size_t>(F.trace(x))];
    for (int v : fib) EXPECT_EQ(v, static_cast<int>(F.size()) / p);
  }
}

TEST(FieldLevel, NonPrimitiveModulus) {
  FieldLevel F(2, 4, {1, 1, 1, 1, 1});
  std::set<Elem> seen;
  for (std::uint64_t k = 0; k < F.order(); ++k) seen.insert(F.exp(k));
  EXPECT_EQ(seen.size(), 15u);
  EXPECT_EQ(F.mul(2, F.mul(2, F.mul(2, F.mul(2, 2)))), 1u);  // x^5 = 1
}

TEST(FieldLevel, Errors) {
  EXPECT_THROW(FieldLevel(2, 2, {1, 0, 1}), Error);
  try {
    FieldTower T(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrime);
  }
  try {
    FieldTower T(5, 2, fp_poly::Poly{1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ReducibleModulus);
  }
  FieldTower T(2, 1, std::nullopt, 1 << 10);
  try {
    T.level(11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
}

TEST(FieldTower, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(11);
  FieldTower T(5, 2, fp_poly::Poly{2, 0, 1});
  for (auto [from, to] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {1, 2}, {1, 4}}) {
    const auto& A = T.level(from);
    const auto& C = T.level(to);
    std::uniform_int_distribution<Elem> d(0, A.size() - 1);
    for (int it = 0; it < 100; ++it) {
      const Elem a = d(rng), b = d(rng);
      EXPECT_EQ(T.embed(A.add(a, b), from, to), C.add(T.embed(a, from, to), T.embed(b, from, to)));
      EXPECT_EQ(T.embed(A.mul(a, b), from, to), C.mul(T.embed(a, from, to), T.embed(b, from, to)));
      // image is fixed by the subfield Frobenius
      EXPECT_EQ(C.frobenius(T.embed(a, from, to), from), T.embed(a, from, to));
    }
  }
  // chained embeddings agree when the multipliers compose
  const Elem g = T.level(2).generator();
  EXPECT_EQ(T.level(4).log(T.embed(g, 2, 4)) % (T.level(4).order() / T.level(2).order()), 0u);
}

TEST(FieldTower, RelativeTrace) {
  std::mt19937_64 rng(3);
  FieldTower T(2, 2);
  for (int from : {4, 6}) {
    const auto& M = T.level(from);
    const auto& K = T.level(2);
    std::uniform_int_distribution<Elem> d(0, M.size() - 1);
    for (int it = 0; it < 200; ++it) {
      const Elem x = d(rng), y = d(rng);
      const Elem tx = T.relative_trace(x, from, 2);
      EXPECT_EQ(T.relative_trace(M.add(x, y), from, 2), K.add(tx, T.relative_trace(y, from, 2)));
      // transitivity down to F_p
      EXPECT_EQ(K.trace(tx), M.trace(x));
    }
    // trace of an embedded element c is (from/2) * c
    for (Elem c = 0; c < K.size(); ++c)
      EXPECT_EQ(T.relative_trace(T.embed(c, 2, from), from, 2), K.scale(c, from / 2));
  }
}

TEST(ClosedPoints, SmallCounts) {
  FieldTower T3(3, 1);
  auto pts = closed_points(T3, SpaceKind::Torus, 1, 2);
  EXPECT_EQ(pts[0].size(), 2u);
  EXPECT_EQ(pts[1].size(), 3u);
  FieldTower T2(2, 1);
  auto aff = closed_points(T2, SpaceKind::Affine, 1, 1);
  EXPECT_EQ(aff[0].size(), 2u);
}

TEST(ClosedPoints, PointCountIdentity) {
  // sum_{d | m} d * #(closed points of degree d) = #X(F_{q^m})
  for (auto [p, a, s, kind] : std::vector<std::tuple<int, int, int, SpaceKind>>{
           {2, 1, 1, SpaceKind::Torus}, {2, 1, 2, SpaceKind::Affine}, {3, 1, 2, SpaceKind::Torus}, {2, 2, 1, SpaceKind::Affine}}) {
    FieldTower T(p, a);
    const int dmax = s == 1 ? 4 : 3;
    auto pts = closed_points(T, kind, s, dmax);
    for (int m = 1; m <= dmax; ++m) {
      std::uint64_t total = 0;
      for (int d = 1; d <= m; ++d)
        if (m % d == 0) total += static_cast<std::uint64_t>(d) * pts[static_cast<std::size_t>(d - 1)].size();
      std::uint64_t qm = 1;
      for (int i = 0; i < m; ++i) qm *= T.q();
      std::uint64_t expect = 1;
      for (int i = 0; i < s; ++i) expect *= kind == SpaceKind::Torus ? qm - 1 : qm;
      EXPECT_EQ(total, expect);
    }
    // representatives are distinct orbits of exact degree
    for (int d = 1; d <= dmax; ++d) {
      const auto& L = T.level(a * d);
      for (const auto& pt : pts[static_cast<std::size_t>(d - 1)]) {
        std::vector<Elem> c = pt.coords;
        for (auto& v : c) v = L.frobenius(v, a * d);
        EXPECT_EQ(c, pt.coords);
      }
    }
  }
}
