#include <gtest/gtest.h>

#include <random>

#include "toricfam/arith.hpp"
#include "toricfam/error.hpp"

using namespace toricfam;

namespace {

CycInt random_cyc(std::mt19937_64& rng, long p, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<Int> c(static_cast<std::size_t>(p - 1));
  for (auto& v : c) v = dist(rng);
  return CycInt(p, c);
}

// Independent oracle: the product of all Galois conjugates lies in Z.
Int norm_by_conjugates(const CycInt& x) {
  CycInt prod(x.prime(), 1);
  for (long k = 1; k < x.prime(); ++k) prod *= x.conjugate(k);
  EXPECT_TRUE(prod.is_integer());
  return prod.coeffs()[0];
}

}  // namespace

TEST(CycNorm, Examples) {
  CycInt z3m1 = CycInt::zeta_pow(3, 1) - CycInt(3, 1);
  EXPECT_EQ(cyc_norm(z3m1), 3);
  EXPECT_EQ(cyc_norm(CycInt(5, 1)), 1);
  EXPECT_EQ(cyc_norm(CycInt(3, 2)), 4);
  EXPECT_EQ(cyc_norm(CycInt(7, 3)), 729);
  EXPECT_EQ(cyc_norm(CycInt(2, -3)), -3);
}

TEST(CycNorm, AgreesWithConjugateProduct) {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (int i = 0; i < 20; ++i) {
      CycInt x = random_cyc(rng, p);
      EXPECT_EQ(cyc_norm(x), norm_by_conjugates(x)) << x.to_string();
    }
  }
}

TEST(CycNorm, Multiplicative) {
  std::mt19937_64 rng(12);
  for (long p : {3L, 5L, 7L}) {
    for (int i = 0; i < 30; ++i) {
      CycInt x = random_cyc(rng, p), y = random_cyc(rng, p);
      EXPECT_EQ(cyc_norm(x * y), cyc_norm(x) * cyc_norm(y));
    }
  }
}

TEST(CycInt, RootsOfUnitySumToZero) {
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    CycInt sum(p);
    for (long i = 0; i < p; ++i) sum += CycInt::zeta_pow(p, i);
    EXPECT_TRUE(sum.is_zero()) << p;
    EXPECT_EQ(CycInt::zeta_pow(p, 1).pow(static_cast<unsigned>(p)), CycInt(p, 1));
    EXPECT_EQ(CycInt::zeta_pow(p, -1) * CycInt::zeta_pow(p, 1), CycInt(p, 1));
  }
}

TEST(CycInt, RejectsComposite) {
  try {
    CycInt x(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrime);
  }
}

TEST(Valuation, Examples) {
  CycInt z3m1 = CycInt::zeta_pow(3, 1) - CycInt(3, 1);
  EXPECT_EQ(*ord_p(z3m1).value, Rat(1, 2));
  for (long p : {2L, 3L, 5L, 7L}) EXPECT_EQ(*ord_p(CycInt(p, p)).value, Rat(1));
  EXPECT_TRUE(ord_p(CycInt(5)).is_infinite());
  PadicVal v = ord_p(CycInt(3, 9), 2);
  EXPECT_EQ(*v.ord_q(), Rat(1));
  EXPECT_EQ(*ord_p(CycRat(CycInt(5, 2), 25)).value, Rat(-2));
}

TEST(Valuation, Properties) {
  std::mt19937_64 rng(13);
  for (long p : {3L, 5L, 7L}) {
    for (int i = 0; i < 40; ++i) {
      CycInt x = random_cyc(rng, p, -9, 9), y = random_cyc(rng, p, -9, 9);
      if (x.is_zero() || y.is_zero()) continue;
      // bias toward divisibility so the ultrametric case is exercised
      x *= CycInt::zeta_pow(p, 1) - CycInt(p, 1);
      Rat vx = *ord_p(x).value, vy = *ord_p(y).value;
      EXPECT_EQ(*ord_p(x * y).value, vx + vy);
      EXPECT_EQ(Rat(vx * (p - 1)).get_den(), 1);
      PadicVal vs = ord_p(x + y);
      if (vs.is_infinite()) continue;
      EXPECT_GE(*vs.value, std::min(vx, vy));
      if (vx != vy) EXPECT_EQ(*vs.value, std::min(vx, vy));
    }
  }
}

TEST(CycRat, InverseAndNormalForm) {
  std::mt19937_64 rng(14);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 20; ++i) {
      CycInt x = random_cyc(rng, p);
      if (x.is_zero()) continue;
      CycRat r(x, 6);
      EXPECT_EQ(r * r.inverse(), CycRat(p, 1));
      EXPECT_EQ(gcd(r.num().content(), r.den()), 1);
    }
  }
  CycRat half(CycInt(3, 2), 4);
  EXPECT_EQ(half.den(), 2);
  EXPECT_EQ(half.num(), CycInt(3, 1));
}

TEST(Series, ExpLogOfGeometric) {
  // exp(sum -T^r / r) = 1 - T
  const long p = 3;
  std::vector<CycRat> s(6, CycRat(p, -1));
  CycPoly c = poly::exp_log_series(s, 7, p);
  EXPECT_EQ(c[0], CycRat(p, 1));
  EXPECT_EQ(c[1], CycRat(p, -1));
  for (std::size_t i = 2; i < c.size(); ++i) EXPECT_TRUE(c[i].is_zero());
}

TEST(Series, InverseAndGcd) {
  const long p = 5;
  CycPoly a{CycRat(p, 1), CycRat(p, -2)};
  CycPoly inv = poly::inverse_series(a, 6);
  for (std::size_t i = 0; i < inv.size(); ++i) EXPECT_EQ(inv[i], CycRat(p, Rat(Int(1) << static_cast<unsigned>(i))));
  CycPoly b{CycRat(p, 1), CycRat(p, -3)};
  CycPoly c{CycRat(p, 1), CycRat(p, 7)};
  CycPoly g = poly::gcd(poly::mul(a, b), poly::mul(a, c));
  EXPECT_EQ(g, a);
  auto [q, r] = poly::divmod(poly::mul(a, b), b);
  EXPECT_EQ(q, a);
  EXPECT_EQ(poly::degree(r), -1);
}
