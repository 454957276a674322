#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "toricfam/error.hpp"
#include "toricfam/toric.hpp"

using namespace toricfam;

namespace {

LaurentPoly make(const FieldTower& T, int n, const std::vector<std::pair<ZPoint, long>>& terms) {
  LaurentPoly f(n, T.a());
  for (const auto& [e, c] : terms) f.add_int_term(T.base(), e, c);
  return f;
}

// Independent evaluation of x_i d/dx_i f^sigma at a torus point of level L.
bool derivatives_vanish(const LaurentPoly& f, const std::vector<ZPoint>& pts, const FieldTower& T, int L,
                        const std::vector<Elem>& x) {
  const FieldLevel& F = T.level(L);
  for (int i = 0; i < f.n; ++i) {
    Elem v = 0;
    for (const auto& mu : pts) {
      Elem term = F.scale(T.embed(f.terms.at(mu), f.level, L), mu[static_cast<std::size_t>(i)]);
      for (int j = 0; j < f.n; ++j) term = F.mul(term, F.pow(x[static_cast<std::size_t>(j)], mu[static_cast<std::size_t>(j)]));
      v = F.add(v, term);
    }
    if (v != 0) return false;
  }
  return true;
}

std::vector<Rat> sorted(std::vector<Rat> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(NewtonData, Examples) {
  FieldTower T(5, 1);
  auto nd = newton_data(make(T, 1, {{{3}, 1}}));
  ASSERT_EQ(nd.faces.size(), 1u);
  EXPECT_EQ(nd.delta.face_vertices(nd.faces[0])[0][0], Rat(3));

  nd = newton_data(make(T, 1, {{{1}, 1}, {{-1}, 1}}));
  EXPECT_EQ(nd.faces.size(), 2u);

  nd = newton_data(make(T, 2, {{{1, 0}, 1}, {{0, 1}, 1}}));
  EXPECT_EQ(nd.faces.size(), 3u);
  int edges = 0;
  for (const auto& f : nd.faces) edges += f.dim == 1;
  EXPECT_EQ(edges, 1);

  try {
    newton_data(make(T, 2, {{{1, 1}, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionDeficient);
  }
}

TEST(Nondegeneracy, Examples) {
  FieldTower T5(5, 1), T3(3, 1);
  auto r = is_nondegenerate(make(T5, 1, {{{3}, 1}}), T5, 6);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.certified_up_to, 6);
  EXPECT_TRUE(r.exact);

  r = is_nondegenerate(make(T3, 1, {{{3}, 1}}), T3, 6);
  ASSERT_TRUE(r.degenerate);
  EXPECT_EQ(r.witness, std::vector<Elem>{1});
  EXPECT_EQ(r.face_points, std::vector<ZPoint>{{3}});

  r = is_nondegenerate(make(T3, 1, {{{1}, 1}, {{-1}, 1}}), T3, 6);
  EXPECT_FALSE(r.degenerate);
}

TEST(Nondegeneracy, EdgeWitness) {
  FieldTower T(5, 1);
  // (x + y)^2 has the double root y = -x on its edge
  auto f = make(T, 2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
  auto r = is_nondegenerate(f, T, 4);
  ASSERT_TRUE(r.degenerate);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_TRUE(derivatives_vanish(f, r.face_points, T, r.witness_level, r.witness));

  auto g = make(T, 2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  EXPECT_FALSE(is_nondegenerate(g, T, 4).degenerate);
}

TEST(Nondegeneracy, RandomAgainstBruteForce) {
  std::mt19937_64 rng(21);
  for (int p : {2, 3, 5}) {
    FieldTower T(p, 1);
    std::uniform_int_distribution<long> ex(-2, 3), co(0, p - 1);
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
      LaurentPoly f(2, 1);
      for (int t = 0; t < 4; ++t) f.add_int_term(T.base(), {ex(rng), ex(rng)}, co(rng));
      NewtonData nd;
      try {
        nd = newton_data(f);
      } catch (const Error&) {
        continue;
      }
      const auto r = is_nondegenerate(f, T, 3);
      // brute-force search over (F_{p^k}^*)^2, k <= 3, for every face
      bool found = false;
      for (const auto& face : nd.faces) {
        const auto pts = face_support(nd, face, f);
        for (int k = 1; k <= 3 && !found; ++k) {
          const auto& L = T.level(k);
          for (Elem a = 1; a < L.size() && !found; ++a)
            for (Elem b = 1; b < L.size() && !found; ++b) found = derivatives_vanish(f, pts, T, k, {a, b});
        }
      }
      if (found) EXPECT_TRUE(r.degenerate);
      if (!r.degenerate) EXPECT_FALSE(found);
      if (r.degenerate && !r.witness.empty())
        EXPECT_TRUE(derivatives_vanish(f, r.face_points, T, r.witness_level, r.witness));
      ++checked;
    }
    EXPECT_GT(checked, 20);
  }
}

TEST(Cofacial, Examples) {
  auto d = RationalPolytope::build_integral({{-1}, {1}}, 1);
  EXPECT_TRUE(cofacial(d, {1}, {2}));
  EXPECT_FALSE(cofacial(d, {1}, {-1}));
  EXPECT_TRUE(cofacial(d, {0}, {-3}));
  auto c = RationalPolytope::build_integral({{1}}, 1);
  try {
    cofacial(c, {1}, {-1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInCone);
  }
}

TEST(Cofacial, MatchesWeightAdditivity) {
  auto d = RationalPolytope::build_integral({{2, 0}, {0, 1}, {-1, -1}, {1, 2}}, 2);
  auto pts = d.lattice_points_up_to_weight(Rat(2));
  for (const auto& a : pts)
    for (const auto& b : pts) {
      ZPoint s{a.u[0] + b.u[0], a.u[1] + b.u[1]};
      EXPECT_EQ(cofacial(d, a.u, b.u), *d.weight(s) == a.weight + b.weight);
    }
}

TEST(HodgeBasis, Examples) {
  FieldTower T5(5, 1);
  auto hb = hodge_basis(make(T5, 1, {{{3}, 1}}), T5);
  EXPECT_EQ(hb.monomials, (std::vector<ZPoint>{{0}, {1}, {2}}));
  EXPECT_EQ(hb.weights, (std::vector<Rat>{Rat(0), Rat(1, 3), Rat(2, 3)}));

  FieldTower T3(3, 1);
  hb = hodge_basis(make(T3, 1, {{{1}, 1}, {{-1}, 1}}), T3);
  EXPECT_EQ(hb.monomials, (std::vector<ZPoint>{{0}, {1}}));
  EXPECT_EQ(hb.weights, (std::vector<Rat>{Rat(0), Rat(1)}));
}

TEST(HodgeBasis, WeightsMatchPoincareNumerator) {
  std::mt19937_64 rng(5);
  int tested = 0;
  for (int p : {3, 5, 7}) {
    FieldTower T(p, 1);
    std::uniform_int_distribution<long> ex(-2, 2), co(1, p - 1);
    for (int it = 0; it < 25; ++it) {
      const int n = 1 + it % 2;
      LaurentPoly f(n, 1);
      for (int t = 0; t < 3 + n; ++t) {
        ZPoint e(static_cast<std::size_t>(n));
        for (auto& v : e) v = ex(rng);
        f.add_int_term(T.base(), e, co(rng));
      }
      try {
        if (is_nondegenerate(f, T, 2).degenerate) continue;
      } catch (const Error&) {
        continue;
      }
      const auto nd = newton_data(f);
      const auto hb = hodge_basis(f, T);
      const auto ps = nd.delta.poincare_series();
      std::vector<Int> gen(ps.numerator.size(), 0);
      for (const auto& w : hb.weights) {
        const Rat s = w * hb.D;
        ASSERT_EQ(s.get_den(), 1);
        const auto i = s.get_num().get_ui();
        ASSERT_LT(i, gen.size());
        gen[i] += 1;
      }
      EXPECT_EQ(gen, ps.numerator);
      // reversed preference gives another basis with the same weights
      const auto hb2 = hodge_basis(f, T, [](const ZPoint& a, const ZPoint& b) { return zigzag_less(b, a); });
      EXPECT_EQ(hb2.monomials.size(), hb.monomials.size());
      EXPECT_EQ(sorted(hb2.weights), sorted(hb.weights));
      ++tested;
    }
  }
  EXPECT_GT(tested, 20);
}

TEST(Upsilon, Examples) {
  FieldTower T(5, 1);
  auto x3 = make(T, 1, {{{3}, 1}});
  EXPECT_EQ(upsilon(x3, {0}), Rat(2));
  EXPECT_EQ(upsilon(x3, {}), Rat(3));
  auto xx = make(T, 1, {{{1}, 1}, {{-1}, 1}});
  EXPECT_EQ(upsilon(xx, {}), Rat(2));
  try {
    upsilon(xx, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotConvenient);
  }
  auto sq = make(T, 2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
  EXPECT_EQ(upsilon(sq, {0, 1}), Rat(1));
  // x y alone: the face x = 0 collapses
  try {
    upsilon(make(T, 2, {{{1, 1}, 1}, {{2, 1}, 1}}), {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotConvenient);
  }
}
