#include "toricfam/toric.hpp"

#include <algorithm>
#include <numeric>

#include "toricfam/error.hpp"

namespace toricfam {

namespace {

using FqPoly = std::vector<Elem>;

void fq_trim(FqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FqPoly fq_mod(FqPoly a, const FqPoly& b, const FieldLevel& F) {
  fq_trim(a);
  const Elem inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem c = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    fq_trim(a);
  }
  return a;
}

FqPoly fq_gcd(FqPoly a, FqPoly b, const FieldLevel& F) {
  fq_trim(a);
  fq_trim(b);
  while (!b.empty()) {
    FqPoly r = fq_mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Elem fq_eval(const FqPoly& a, Elem y, const FieldLevel& F) {
  Elem v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = F.add(F.mul(v, y), a[i]);
  return v;
}

ZPoint to_zpoint(const QPoint& q) {
  ZPoint z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = q[i].get_num().get_si();
  return z;
}

long zigzag(long v) { return v > 0 ? 2 * v - 1 : -2 * v; }

Rat face_rhs(const Facet& f) { return f.through_origin ? Rat(0) : Rat(1); }

Rat ambient_eval(const Facet& f, const ZPoint& u) {
  Rat v = 0;
  for (std::size_t i = 0; i < u.size(); ++i) v += f.ambient_form[i] * u[i];
  return v;
}

// Common zeros of x_i d/dx_i over the torus for a face whose points are
// listed; the checks return a witness when one is found.
struct FaceCheck {
  bool degenerate = false;
  bool exact = true;
  int reached = 0;
  int witness_level = 0;
  std::vector<Elem> witness;
};

FaceCheck check_vertex(const ZPoint& mu, long p, int m) {
  FaceCheck r;
  r.degenerate = std::all_of(mu.begin(), mu.end(), [p](long v) { return v % p == 0; });
  if (r.degenerate) {
    r.witness_level = m;
    r.witness.assign(mu.size(), 1);
  }
  return r;
}

FaceCheck check_edge(const std::vector<ZPoint>& pts, const ZPoint& a, const ZPoint& b, const LaurentPoly& f,
                     const FieldTower& tower, int k_max) {
  FaceCheck r;
  const std::size_t n = a.size();
  const int m = f.level;
  const FieldLevel& F = tower.level(m);
  ZPoint w(n);
  long g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = b[i] - a[i];
    g = std::gcd(g, std::abs(w[i]));
  }
  for (auto& v : w) v /= g;
  // f^sigma = x^a * h(y), y = x^w
  FqPoly h(static_cast<std::size_t>(g + 1), 0);
  for (const auto& mu : pts) {
    long j = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0) {
        j = (mu[i] - a[i]) / w[i];
        break;
      }
    h[static_cast<std::size_t>(j)] = f.terms.at(mu);
  }
  FqPoly G;
  for (std::size_t i = 0; i < n; ++i) {
    FqPoly hi(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) hi[j] = F.scale(h[j], a[i] + w[i] * static_cast<long>(j));
    G = fq_gcd(G, hi, F);
  }
  // roots at y = 0 do not lie on the torus
  while (!G.empty() && G.front() == 0) G.erase(G.begin());
  if (!G.empty() && G.size() == 1) return r;
  r.degenerate = true;
  // x_i = y^{b_i} with b . w = 1 realizes y = x^w
  ZMat col(n, ZVec(1));
  for (std::size_t i = 0; i < n; ++i) col[i][0] = w[i];
  auto [U, rank] = linalg::row_hermite(col);
  (void)rank;
  Int dotw = 0;
  for (std::size_t i = 0; i < n; ++i) dotw += U[0][i] * w[i];
  const long sign = dotw > 0 ? 1 : -1;
  auto emit = [&](const FieldLevel& L, Elem y) {
    r.witness_level = L.degree();
    r.witness.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.witness[i] = L.pow(y, sign * U[0][i].get_si());
  };
  if (G.empty()) {
    emit(F, 1);
    return r;
  }
  const int deg = static_cast<int>(G.size()) - 1;
  for (int k = 1; k <= std::max(deg, k_max); ++k) {
    const int lvl = m * k;
    if (!tower.feasible(lvl)) break;
    const FieldLevel& L = tower.level(lvl);
    FqPoly Gk(G.size());
    for (std::size_t j = 0; j < G.size(); ++j) Gk[j] = tower.embed(G[j], m, lvl);
    for (Elem y = 1; y < L.size(); ++y)
      if (fq_eval(Gk, y, L) == 0) {
        emit(L, y);
        return r;
      }
  }
  return r;
}

FaceCheck check_brute(const std::vector<ZPoint>& pts, const LaurentPoly& f, const FieldTower& tower, int k_max,
                      double budget) {
  FaceCheck r;
  r.exact = false;
  const std::size_t n = static_cast<std::size_t>(f.n);
  const int m = f.level;
  for (int k = 1; k <= k_max; ++k) {
    const int lvl = m * k;
    if (!tower.feasible(lvl)) break;
    const FieldLevel& L = tower.level(lvl);
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= L.order();
    if (total > budget) break;
    std::vector<std::uint64_t> logc(pts.size());
    for (std::size_t t = 0; t < pts.size(); ++t) logc[t] = L.log(tower.embed(f.terms.at(pts[t]), m, lvl));
    std::vector<std::uint64_t> l(n, 0);
    for (bool more = true; more;) {
      bool all_zero = true;
      for (std::size_t i = 0; i < n && all_zero; ++i) {
        Elem v = 0;
        for (std::size_t t = 0; t < pts.size(); ++t) {
          if (pts[t][i] == 0) continue;
          __int128 e = logc[t];
          for (std::size_t j = 0; j < n; ++j) e += static_cast<__int128>(pts[t][j]) * static_cast<__int128>(l[j]);
          long long em = static_cast<long long>(e % L.order());
          if (em < 0) em += L.order();
          v = L.add(v, L.scale(L.exp(static_cast<std::uint64_t>(em)), pts[t][i]));
        }
        all_zero = v == 0;
      }
      if (all_zero) {
        r.degenerate = true;
        r.witness_level = lvl;
        r.witness.resize(n);
        for (std::size_t j = 0; j < n; ++j) r.witness[j] = L.exp(l[j]);
        return r;
      }
      std::size_t j = 0;
      while (j < n && l[j] + 1 == L.order()) l[j++] = 0;
      if (j == n) more = false;
      else ++l[j];
    }
    r.reached = k;
  }
  return r;
}

}  // namespace

void LaurentPoly::add_term(const FieldLevel& F, const ZPoint& e, Elem c) {
  if (static_cast<int>(e.size()) != n) throw Error(Errc::DimensionMismatch, "exponent length differs from n");
  Elem v = F.add(terms.count(e) ? terms[e] : 0, c);
  if (v == 0) terms.erase(e);
  else terms[e] = v;
}

std::vector<ZPoint> LaurentPoly::support() const {
  std::vector<ZPoint> out;
  for (const auto& [e, c] : terms) out.push_back(e);
  return out;
}

NewtonData newton_data(const LaurentPoly& f) {
  if (f.is_zero()) throw Error(Errc::Validation, "zero polynomial");
  NewtonData nd{RationalPolytope::build_integral(f.support(), static_cast<std::size_t>(f.n)), {}};
  if (nd.delta.span_dim() != f.n)
    throw Error(Errc::DimensionDeficient,
                "Newton polytope has dimension " + std::to_string(nd.delta.span_dim()) + " < " + std::to_string(f.n));
  for (const auto& face : nd.delta.faces())
    if (!face.contains_origin) nd.faces.push_back(face);
  return nd;
}

std::vector<ZPoint> face_support(const NewtonData& nd, const Face& face, const LaurentPoly& f) {
  std::vector<const Facet*> inc;
  for (const auto& fc : nd.delta.facets())
    if ((fc.vertices & face.vertices) == face.vertices) inc.push_back(&fc);
  std::vector<ZPoint> out;
  for (const auto& [mu, c] : f.terms) {
    bool on = true;
    for (const Facet* fc : inc)
      if (ambient_eval(*fc, mu) != face_rhs(*fc)) {
        on = false;
        break;
      }
    if (on) out.push_back(mu);
  }
  return out;
}

NondegResult is_nondegenerate(const LaurentPoly& f, const FieldTower& tower, int k_max, double point_budget) {
  if (k_max < 1) throw Error(Errc::Validation, "k_max must be at least 1");
  const NewtonData nd = newton_data(f);
  const long p = tower.p();
  NondegResult res;
  res.certified_up_to = k_max;
  for (const auto& face : nd.faces) {
    const auto pts = face_support(nd, face, f);
    const auto verts = nd.delta.face_vertices(face);
    FaceCheck fc;
    if (face.dim == 0) {
      fc = check_vertex(to_zpoint(verts[0]), p, f.level);
    } else if (face.dim == 1) {
      fc = check_edge(pts, to_zpoint(verts[0]), to_zpoint(verts[1]), f, tower, k_max);
    } else {
      fc = check_brute(pts, f, tower, k_max, point_budget);
      if (!fc.degenerate) {
        res.exact = false;
        res.certified_up_to = std::min(res.certified_up_to, fc.reached);
      }
    }
    if (fc.degenerate) {
      res.degenerate = true;
      res.face = face;
      res.face_points = pts;
      res.witness_level = fc.witness_level;
      res.witness = fc.witness;
      return res;
    }
  }
  return res;
}

std::uint64_t max_facets(const RationalPolytope& delta, const ZPoint& u) {
  auto w = delta.weight(u);
  if (!w) throw Error(Errc::NotInCone, "exponent outside the cone of the Newton polytope");
  if (delta.facets().size() > 64) throw Error(Errc::Validation, "more than 64 facets");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < delta.facets().size(); ++i) {
    const auto& fc = delta.facets()[i];
    if (!fc.through_origin && ambient_eval(fc, u) == *w) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

bool cofacial(const RationalPolytope& delta, const ZPoint& mu, const ZPoint& nu) {
  const auto a = max_facets(delta, mu);
  const auto b = max_facets(delta, nu);
  const bool mu0 = std::all_of(mu.begin(), mu.end(), [](long v) { return v == 0; });
  const bool nu0 = std::all_of(nu.begin(), nu.end(), [](long v) { return v == 0; });
  return mu0 || nu0 || (a & b) != 0;
}

bool zigzag_less(const ZPoint& a, const ZPoint& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const long za = zigzag(a[i]), zb = zigzag(b[i]);
    if (za != zb) return za < zb;
  }
  return a.size() < b.size();
}

HodgeBasis hodge_basis(const LaurentPoly& f, const FieldTower& tower, const MonomialOrder& prefer) {
  const NewtonData nd = newton_data(f);
  const auto& delta = nd.delta;
  const FieldLevel& F = tower.level(f.level);
  const long D = delta.denominator();
  const int n = f.n;
  Int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  const Rat expected_q = delta.normalized_volume() * Rat(fact);
  if (expected_q.get_den() != 1) throw Error(Errc::Validation, "n! vol is not an integer");
  const std::size_t expected = expected_q.get_num().get_ui();

  const long nmax = D * (n + 1);
  std::vector<std::vector<ZPoint>> levels(static_cast<std::size_t>(nmax + 1));
  std::map<ZPoint, std::uint64_t> facet_mask;
  for (const auto& lp : delta.lattice_points_up_to_weight(Rat(n + 1))) {
    const Rat scaled = lp.weight * D;
    levels[static_cast<std::size_t>(scaled.get_num().get_si())].push_back(lp.u);
    facet_mask[lp.u] = max_facets(delta, lp.u);
  }

  // weight-one parts of x_l df/dx_l
  struct Term {
    ZPoint mu;
    Elem c;
    std::uint64_t mask;
  };
  std::vector<Term> top;
  for (const auto& [mu, c] : f.terms)
    if (delta.weight(mu) == Rat(1)) top.push_back({mu, c, max_facets(delta, mu)});

  HodgeBasis hb;
  hb.D = D;
  for (long N = 0; N <= nmax; ++N) {
    auto& mons = levels[static_cast<std::size_t>(N)];
    if (mons.empty()) continue;
    std::sort(mons.begin(), mons.end(), [&](const ZPoint& a, const ZPoint& b) { return prefer(a, b); });
    std::map<ZPoint, std::size_t> idx;
    for (std::size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;

    std::vector<std::vector<Elem>> basis;
    std::vector<std::size_t> pivots;
    auto insert = [&](std::vector<Elem> v) {
      for (std::size_t r = 0; r < basis.size(); ++r) {
        const Elem c = v[pivots[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (basis[r][j]) v[j] = F.sub(v[j], F.mul(c, basis[r][j]));
      }
      std::size_t piv = 0;
      while (piv < v.size() && v[piv] == 0) ++piv;
      if (piv == v.size()) return false;
      const Elem inv = F.inv(v[piv]);
      for (auto& x : v) x = F.mul(x, inv);
      basis.push_back(std::move(v));
      pivots.push_back(piv);
      return true;
    };

    if (N >= D) {
      for (const auto& nu : levels[static_cast<std::size_t>(N - D)]) {
        const bool nu0 = std::all_of(nu.begin(), nu.end(), [](long v) { return v == 0; });
        for (int l = 0; l < n; ++l) {
          std::vector<Elem> row(mons.size(), 0);
          bool any = false;
          for (const auto& t : top) {
            if (!nu0 && (t.mask & facet_mask[nu]) == 0) continue;
            const Elem c = F.scale(t.c, t.mu[static_cast<std::size_t>(l)]);
            if (c == 0) continue;
            ZPoint s(nu.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = nu[i] + t.mu[i];
            const std::size_t j = idx.at(s);
            row[j] = F.add(row[j], c);
            any = true;
          }
          if (any) insert(std::move(row));
        }
      }
    }
    for (std::size_t i = 0; i < mons.size(); ++i) {
      std::vector<Elem> e(mons.size(), 0);
      e[i] = 1;
      if (!insert(std::move(e))) continue;
      if (make_rat(N, D) > Rat(n))
        throw Error(Errc::RankOverflow, "cokernel in weight " + to_string(make_rat(N, D)) + " above the cutoff");
      hb.monomials.push_back(mons[i]);
      hb.weights.push_back(make_rat(N, D));
      if (hb.monomials.size() > expected)
        throw Error(Errc::RankOverflow, "basis exceeds n! vol = " + std::to_string(expected));
    }
  }
  if (hb.monomials.size() != expected)
    throw Error(Errc::RankOverflow, "basis has " + std::to_string(hb.monomials.size()) + " elements, expected " +
                                        std::to_string(expected));
  return hb;
}

Rat upsilon(const LaurentPoly& f, const std::vector<int>& S2) {
  const int n = f.n;
  for (int i : S2)
    if (i < 0 || i >= n) throw Error(Errc::Validation, "S2 index out of range");
  for (const auto& [mu, c] : f.terms)
    for (int i : S2)
      if (mu[static_cast<std::size_t>(i)] < 0)
        throw Error(Errc::NotConvenient, "negative exponent in affine variable " + std::to_string(i));
  Rat total = 0;
  const std::size_t k = S2.size();
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
    std::vector<bool> inA(static_cast<std::size_t>(n), false);
    int sz = 0;
    for (std::size_t b = 0; b < k; ++b)
      if (sub >> b & 1U) {
        inA[static_cast<std::size_t>(S2[b])] = true;
        ++sz;
      }
    const int dim = n - sz;
    Rat vol = 1;
    if (dim > 0) {
      std::vector<ZPoint> pts;
      for (const auto& [mu, c] : f.terms) {
        bool keep = true;
        ZPoint proj;
        for (int i = 0; i < n; ++i) {
          if (inA[static_cast<std::size_t>(i)]) keep = keep && mu[static_cast<std::size_t>(i)] == 0;
          else proj.push_back(mu[static_cast<std::size_t>(i)]);
        }
        if (keep) pts.push_back(proj);
      }
      auto P = RationalPolytope::build_integral(pts, static_cast<std::size_t>(dim));
      if (P.span_dim() != dim) {
        std::string a;
        for (int i = 0; i < n; ++i)
          if (inA[static_cast<std::size_t>(i)]) a += (a.empty() ? "" : ",") + std::to_string(i);
        throw Error(Errc::NotConvenient, "face A = {" + a + "} has dimension " + std::to_string(P.span_dim()));
      }
      vol = P.normalized_volume();
    }
    Int fact = 1;
    for (int i = 2; i <= dim; ++i) fact *= i;
    const Rat term = vol * Rat(fact);
    total += (sz % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

}  // namespace toricfam
