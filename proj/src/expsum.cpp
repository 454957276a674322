#include "toricfam/expsum.hpp"

#include <algorithm>
#include <thread>

#include "toricfam/error.hpp"

namespace toricfam {

PointSpace PointSpace::mixed(int n, const std::vector<int>& S2) {
  PointSpace s = torus(n);
  for (int i : S2) {
    if (i < 0 || i >= n) throw Error(Errc::Validation, "affine variable index out of range");
    s.affine[static_cast<std::size_t>(i)] = true;
  }
  return s;
}

std::vector<int> PointSpace::affine_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < affine.size(); ++i)
    if (affine[i]) out.push_back(static_cast<int>(i));
  return out;
}

bool PointSpace::is_torus() const { return std::none_of(affine.begin(), affine.end(), [](bool b) { return b; }); }

namespace {

struct SumPlan {
  std::size_t n = 0;
  std::size_t terms = 0;
  std::uint64_t ord = 0;
  int p = 2;
  const std::uint8_t* trace = nullptr;
  std::vector<std::uint64_t> base;                // log of each coefficient
  std::vector<std::vector<std::uint64_t>> step;   // step[i][t] = mu_t[i] mod ord
  std::vector<std::vector<std::uint8_t>> kills;   // kills[i][t]: x_i = 0 annihilates term t
  std::vector<bool> affine;
};

void accumulate(const SumPlan& P, std::size_t i, std::vector<std::uint64_t>& idx, std::vector<int>& zeros,
                std::vector<long long>& counts, std::uint64_t lo, std::uint64_t hi) {
  const std::size_t T = P.terms;
  const auto& st = P.step[i];
  std::vector<std::uint64_t> save(idx);
  if (i + 1 == P.n) {
    // innermost loop
    std::vector<std::uint64_t> cur(T);
    for (std::size_t t = 0; t < T; ++t) cur[t] = (idx[t] + (lo % P.ord) * st[t]) % P.ord;
    for (std::uint64_t l = lo; l < hi; ++l) {
      unsigned s = 0;
      for (std::size_t t = 0; t < T; ++t) {
        if (zeros[t] == 0) s += P.trace[cur[t]];
        cur[t] += st[t];
        if (cur[t] >= P.ord) cur[t] -= P.ord;
      }
      ++counts[s % static_cast<unsigned>(P.p)];
    }
  } else {
    for (std::size_t t = 0; t < T; ++t) idx[t] = (idx[t] + (lo % P.ord) * st[t]) % P.ord;
    for (std::uint64_t l = lo; l < hi; ++l) {
      accumulate(P, i + 1, idx, zeros, counts, 0, P.ord);
      for (std::size_t t = 0; t < T; ++t) {
        idx[t] += st[t];
        if (idx[t] >= P.ord) idx[t] -= P.ord;
      }
    }
    idx = save;
  }
  if (P.affine[i] && hi == P.ord) {
    // x_i = 0
    for (std::size_t t = 0; t < T; ++t) zeros[t] += P.kills[i][t];
    if (i + 1 == P.n) {
      unsigned s = 0;
      for (std::size_t t = 0; t < T; ++t)
        if (zeros[t] == 0) s += P.trace[idx[t]];
      ++counts[s % static_cast<unsigned>(P.p)];
    } else {
      accumulate(P, i + 1, idx, zeros, counts, 0, P.ord);
    }
    for (std::size_t t = 0; t < T; ++t) zeros[t] -= P.kills[i][t];
  }
}

}  // namespace

double exp_sum_cost(const LaurentPoly& G, const FieldTower& tower, int r) {
  double q = 1;
  for (int i = 0; i < G.level * r; ++i) q *= tower.p();
  double c = 1;
  for (int i = 0; i < G.n; ++i) c *= q;
  return c;
}

CycInt exp_sum(const LaurentPoly& G, const FieldTower& tower, int r, const PointSpace& space, int threads) {
  if (static_cast<int>(space.affine.size()) != G.n) throw Error(Errc::DimensionMismatch, "space dimension differs from n");
  if (r < 1) throw Error(Errc::Validation, "r must be positive");
  for (const auto& [mu, c] : G.terms)
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (space.affine[i] && mu[i] < 0) throw Error(Errc::PoleOnDomain, "negative exponent on affine variable " + std::to_string(i));
  const int lvl = G.level * r;
  const FieldLevel& L = tower.level(lvl);
  const long p = tower.p();
  SumPlan P;
  P.n = static_cast<std::size_t>(G.n);
  P.terms = G.terms.size();
  P.ord = L.order();
  P.p = static_cast<int>(p);
  P.trace = L.trace_table().data();
  P.affine = space.affine;
  P.step.assign(P.n, std::vector<std::uint64_t>(P.terms));
  P.kills.assign(P.n, std::vector<std::uint8_t>(P.terms));
  std::size_t t = 0;
  for (const auto& [mu, c] : G.terms) {
    P.base.push_back(L.log(tower.embed(c, G.level, lvl)));
    for (std::size_t i = 0; i < P.n; ++i) {
      long long m = mu[i] % static_cast<long long>(P.ord);
      if (m < 0) m += static_cast<long long>(P.ord);
      P.step[i][t] = static_cast<std::uint64_t>(m);
      P.kills[i][t] = mu[i] > 0;
    }
    ++t;
  }
  std::vector<long long> counts(static_cast<std::size_t>(p), 0);
  if (P.n == 0) {
    unsigned s = 0;
    for (std::size_t k = 0; k < P.terms; ++k) s += P.trace[P.base[k]];
    ++counts[s % static_cast<unsigned>(p)];
    return CycInt::from_residue_counts(p, counts);
  }
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(P.ord, 64))));
  if (nt == 1) {
    std::vector<std::uint64_t> idx(P.base);
    std::vector<int> zeros(P.terms, 0);
    accumulate(P, 0, idx, zeros, counts, 0, P.ord);
    return CycInt::from_residue_counts(p, counts);
  }
  std::vector<std::vector<long long>> part(static_cast<std::size_t>(nt), std::vector<long long>(static_cast<std::size_t>(p), 0));
  std::vector<std::thread> pool;
  for (int k = 0; k < nt; ++k) {
    pool.emplace_back([&, k] {
      const std::uint64_t lo = P.ord * static_cast<std::uint64_t>(k) / static_cast<std::uint64_t>(nt);
      const std::uint64_t hi = P.ord * static_cast<std::uint64_t>(k + 1) / static_cast<std::uint64_t>(nt);
      std::vector<std::uint64_t> idx(P.base);
      std::vector<int> zeros(P.terms, 0);
      // the zero value of an affine first variable is handled by the last chunk
      SumPlan local = P;
      if (k + 1 != nt) local.affine[0] = false;
      accumulate(local, 0, idx, zeros, part[static_cast<std::size_t>(k)], lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& c : part)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += c[i];
  return CycInt::from_residue_counts(p, counts);
}

LPolynomial fiber_lpoly(const LaurentPoly& G, const FieldTower& tower, const PointSpace& space, int n_expected, int guard,
                        int threads) {
  if (n_expected < 0) throw Error(Errc::Validation, "expected degree must be nonnegative");
  const long p = tower.p();
  if (guard < 0) guard = std::max(3, n_expected);
  // cap the guard at the largest feasible extension
  int rmax = 0;
  while (rmax < n_expected + guard && tower.feasible(G.level * (rmax + 1))) ++rmax;
  if (rmax < n_expected)
    throw Error(Errc::BudgetExceeded, "S_" + std::to_string(n_expected) + " needs F_{p^" +
                                          std::to_string(G.level * n_expected) + "}, beyond the table cap");
  LPolynomial out;
  out.guard = rmax - n_expected;
  const int terms = n_expected + out.guard;
  std::vector<CycRat> ps;
  for (int r = 1; r <= terms; ++r) {
    out.sums.push_back(exp_sum(G, tower, r, space, threads));
    // exponent (-1)^{n+1}
    ps.emplace_back(G.n % 2 == 0 ? -out.sums.back() : out.sums.back());
  }
  const CycPoly series = poly::exp_log_series(ps, static_cast<std::size_t>(terms + 1), p);
  for (int i = n_expected + 1; i <= terms; ++i)
    if (!series[static_cast<std::size_t>(i)].is_zero())
      throw Error(Errc::DegreeViolation, "coefficient of T^" + std::to_string(i) + " is nonzero beyond degree " +
                                             std::to_string(n_expected));
  for (int i = 0; i <= n_expected; ++i) {
    const auto& c = series[static_cast<std::size_t>(i)];
    if (!c.is_integral()) throw Error(Errc::NonIntegralCoefficient, "coefficient of T^" + std::to_string(i));
    out.coeffs.push_back(c.num());
  }
  return out;
}

std::vector<Rat> NewtonPolygon::slopes() const {
  std::vector<Rat> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const long dx = vertices[i].x - vertices[i - 1].x;
    const Rat s = (vertices[i].y - vertices[i - 1].y) / Rat(dx);
    for (long k = 0; k < dx; ++k) out.push_back(s);
  }
  return out;
}

Rat NewtonPolygon::at(long x) const {
  if (vertices.empty() || x < vertices.front().x || x > vertices.back().x) throw Error(Errc::Validation, "abscissa out of range");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (x <= vertices[i].x) {
      const auto& a = vertices[i - 1];
      const auto& b = vertices[i];
      return Rat(a.y + (b.y - a.y) * Rat(x - a.x, b.x - a.x));
    }
  return vertices.front().y;
}

NewtonPolygon lower_hull(const std::vector<std::pair<long, Rat>>& pts) {
  NewtonPolygon np;
  auto cross = [](const PolyVertex& o, const PolyVertex& a, const std::pair<long, Rat>& b) -> Rat {
    return Rat((a.x - o.x) * (b.second - o.y) - (a.y - o.y) * (b.first - o.x));
  };
  for (const auto& pt : pts) {
    while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0)
      np.vertices.pop_back();
    np.vertices.push_back({pt.first, pt.second});
  }
  return np;
}

namespace {

template <class C>
NewtonPolygon polygon_of(const std::vector<C>& coeffs, long a, long deg) {
  std::vector<std::pair<long, Rat>> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto v = ord_p(coeffs[i], a * deg).ord_q();
    if (v) pts.emplace_back(static_cast<long>(i), *v);
  }
  return lower_hull(pts);
}

}  // namespace

NewtonPolygon newton_polygon(const std::vector<CycInt>& coeffs, long a, long deg_lambda) {
  return polygon_of(coeffs, a, deg_lambda);
}

NewtonPolygon newton_polygon(const std::vector<CycRat>& coeffs, long a, long deg_lambda) {
  return polygon_of(coeffs, a, deg_lambda);
}

NewtonPolygon polygon_from_slopes(std::vector<Rat> slopes) {
  std::sort(slopes.begin(), slopes.end());
  std::vector<std::pair<long, Rat>> pts{{0, Rat(0)}};
  Rat y = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    y += slopes[i];
    pts.emplace_back(static_cast<long>(i + 1), y);
  }
  return lower_hull(pts);
}

NewtonPolygon hodge_polygon(const HodgeBasis& hb) { return polygon_from_slopes(hb.weights); }

bool dominates(const NewtonPolygon& upper, const NewtonPolygon& lower) {
  if (upper.length() != lower.length()) return false;
  for (long x = 0; x <= upper.length(); ++x)
    if (upper.at(x) < lower.at(x)) return false;
  return true;
}

}  // namespace toricfam
