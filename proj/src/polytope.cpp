#include "toricfam/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "toricfam/error.hpp"

namespace toricfam {

QPoint to_qpoint(const ZPoint& z) {
  QPoint q(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) q[i] = Rat(z[i]);
  return q;
}

namespace {

int affine_rank(const std::vector<QVec>& pts) {
  if (pts.size() <= 1) return 0;
  QMat diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    QVec d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(linalg::rank(diffs));
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

RationalPolytope RationalPolytope::build_integral(const std::vector<ZPoint>& points, std::size_t ambient_dim) {
  std::vector<QPoint> q;
  q.reserve(points.size());
  for (const auto& z : points) q.push_back(to_qpoint(z));
  return build(q, ambient_dim);
}

RationalPolytope RationalPolytope::build(const std::vector<QPoint>& points, std::size_t ambient_dim) {
  RationalPolytope P;
  P.ambient_ = ambient_dim;
  std::vector<QPoint> pts{QPoint(ambient_dim, Rat(0))};
  for (const auto& x : points) {
    if (x.size() != ambient_dim)
      throw Error(Errc::DimensionMismatch, "point of length " + std::to_string(x.size()) + " in ambient dimension " +
                                               std::to_string(ambient_dim));
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }

  // Lattice of the span.
  const QMat& A = pts;
  const std::size_t s = ambient_dim;
  P.span_ = static_cast<int>(linalg::rank(A));
  const std::size_t st = static_cast<std::size_t>(P.span_);
  if (st == s) {
    P.basis_.assign(s, ZVec(s, Int(0)));
    P.coord_map_.assign(s, QVec(s, Rat(0)));
    for (std::size_t i = 0; i < s; ++i) {
      P.basis_[i][i] = 1;
      P.coord_map_[i][i] = 1;
    }
  } else {
    QMat ker = linalg::nullspace(A, s);
    P.kernel_ = ker;
    ZMat kcols(s, ZVec(ker.size()));
    for (std::size_t j = 0; j < ker.size(); ++j) {
      ZVec z = linalg::primitive_integer(ker[j]);
      for (std::size_t i = 0; i < s; ++i) kcols[i][j] = z[i];
    }
    auto [U, r] = linalg::row_hermite(kcols);
    QMat Uq(s, QVec(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) Uq[i][j] = Rat(U[i][j]);
    QMat Uinv = linalg::inverse(Uq);
    P.basis_.assign(U.begin() + static_cast<long>(r), U.end());
    P.coord_map_.assign(s, QVec(st));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < st; ++j) P.coord_map_[i][j] = Uinv[i][r + j];
  }

  std::vector<QVec> red;
  red.reserve(pts.size());
  for (const auto& x : pts) red.push_back(linalg::vec_mat(x, P.coord_map_));

  if (st == 0) {
    P.vertices_ = {pts[0]};
    P.coords_ = {QVec{}};
    P.faces_ = {Face{1, 0, true}};
    return P;
  }

  // Facet hyperplanes through affinely independent st-subsets.
  struct Cand {
    QVec form;
    bool origin;
  };
  std::vector<Cand> cands;
  for_each_subset(red.size(), st, [&](const std::vector<std::size_t>& sub) {
    QMat m;
    for (auto i : sub) {
      QVec row = red[i];
      row.push_back(1);
      m.push_back(std::move(row));
    }
    QMat ns = linalg::nullspace(m, st + 1);
    if (ns.size() != 1) return;
    QVec a(ns[0].begin(), ns[0].begin() + static_cast<long>(st));
    Rat c = -ns[0][st];
    bool pos = false, neg = false;
    for (const auto& x : red) {
      Rat v = linalg::dot(a, x) - c;
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos && neg) return;
    if (pos) {
      for (auto& x : a) x = -x;
      c = -c;
    }
    Cand cand;
    if (c != 0) {
      for (auto& x : a) x /= c;
      cand = {a, false};
    } else {
      ZVec z = linalg::primitive_integer(a);
      QVec qa(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) qa[i] = Rat(z[i]);
      cand = {qa, true};
    }
    for (const auto& e : cands)
      if (e.origin == cand.origin && e.form == cand.form) return;
    cands.push_back(std::move(cand));
  });

  auto on_facet = [&](const Cand& f, const QVec& x) { return linalg::dot(f.form, x) == (f.origin ? Rat(0) : Rat(1)); };

  // Vertices: points whose incident facet normals have full rank.
  std::vector<std::size_t> vidx;
  for (std::size_t i = 0; i < red.size(); ++i) {
    QMat normals;
    for (const auto& f : cands)
      if (on_facet(f, red[i])) normals.push_back(f.form);
    if (linalg::rank(normals) == st) vidx.push_back(i);
  }
  std::sort(vidx.begin(), vidx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (vidx.size() > 64) throw Error(Errc::Validation, "more than 64 vertices");
  for (auto i : vidx) {
    P.vertices_.push_back(pts[i]);
    P.coords_.push_back(red[i]);
  }

  for (const auto& f : cands) {
    Facet F;
    F.form = f.form;
    F.through_origin = f.origin;
    F.ambient_form = QVec(s, Rat(0));
    for (std::size_t i = 0; i < s; ++i) F.ambient_form[i] = linalg::dot(P.coord_map_[i], f.form);
    for (std::size_t v = 0; v < P.coords_.size(); ++v)
      if (on_facet(f, P.coords_[v])) F.vertices |= std::uint64_t{1} << v;
    P.facets_.push_back(std::move(F));
  }
  std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) {
    return std::tie(a.through_origin, a.vertices) < std::tie(b.through_origin, b.vertices);
  });

  // Face lattice by closing facet vertex sets under intersection.
  const std::uint64_t all = P.coords_.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << P.coords_.size()) - 1);
  std::set<std::uint64_t> masks{all};
  for (const auto& f : P.facets_) masks.insert(f.vertices);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::uint64_t> cur(masks.begin(), masks.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::uint64_t m = cur[i] & cur[j];
        if (m && masks.insert(m).second) grew = true;
      }
  }
  for (auto m : masks) {
    Face f;
    f.vertices = m;
    std::vector<QVec> vs;
    for (std::size_t v = 0; v < P.coords_.size(); ++v)
      if (m >> v & 1U) vs.push_back(P.coords_[v]);
    f.dim = affine_rank(vs);
    if (m == all) {
      f.contains_origin = true;
    } else {
      f.contains_origin = true;
      for (const auto& F : P.facets_)
        if (!F.through_origin && (F.vertices & m) == m) f.contains_origin = false;
    }
    P.faces_.push_back(f);
  }
  std::sort(P.faces_.begin(), P.faces_.end(),
            [](const Face& a, const Face& b) { return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices); });

  // Pulling triangulation: cone from the lowest vertex over faces avoiding it.
  std::function<std::vector<std::vector<std::size_t>>(std::uint64_t, int)> triangulate =
      [&](std::uint64_t mask, int dim) -> std::vector<std::vector<std::size_t>> {
    const std::size_t v0 = static_cast<std::size_t>(__builtin_ctzll(mask));
    if (dim == 0) return {{v0}};
    std::vector<std::vector<std::size_t>> out;
    for (const auto& g : P.faces_) {
      if (g.dim != dim - 1 || (g.vertices & mask) != g.vertices || (g.vertices >> v0 & 1U)) continue;
      for (auto simplex : triangulate(g.vertices, dim - 1)) {
        simplex.push_back(v0);
        out.push_back(std::move(simplex));
      }
    }
    return out;
  };
  Rat vol = 0;
  for (const auto& simplex : triangulate(all, P.span_)) {
    QMat m;
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
      QVec d(st);
      for (std::size_t j = 0; j < st; ++j) d[j] = P.coords_[simplex[i]][j] - P.coords_[simplex.back()][j];
      m.push_back(std::move(d));
    }
    vol += abs(linalg::det(m));
  }
  P.volume_ = vol / Rat(factorial(P.span_));

  Int D = 1;
  for (const auto& f : P.facets_)
    if (!f.through_origin) D = lcm(D, linalg::lcm_denominators(f.form));
  P.D_ = D.get_si();
  return P;
}

std::vector<QPoint> RationalPolytope::face_vertices(const Face& f) const {
  std::vector<QPoint> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (f.vertices >> v & 1U) out.push_back(vertices_[v]);
  return out;
}

std::optional<QVec> RationalPolytope::coords(const QPoint& x) const {
  if (x.size() != ambient_) throw Error(Errc::DimensionMismatch, "point has wrong ambient dimension");
  for (const auto& k : kernel_)
    if (linalg::dot(k, x) != 0) return std::nullopt;
  return linalg::vec_mat(x, coord_map_);
}

bool RationalPolytope::in_cone(const QPoint& x) const { return weight(x).has_value(); }

std::optional<Rat> RationalPolytope::weight(const QPoint& x) const {
  auto c = coords(x);
  if (!c) return std::nullopt;
  Rat w = 0;
  for (const auto& f : facets_) {
    Rat v = linalg::dot(f.form, *c);
    if (f.through_origin) {
      if (v > 0) return std::nullopt;
    } else if (v > w) {
      w = v;
    }
  }
  return w;
}

bool RationalPolytope::contains(const QPoint& x) const {
  auto w = weight(x);
  return w && *w <= 1;
}

std::vector<LatticePoint> RationalPolytope::lattice_points_up_to_weight(const Rat& wmax) const {
  std::vector<LatticePoint> out;
  const auto st = static_cast<std::size_t>(span_);
  if (st == 0) {
    out.push_back({ZPoint(ambient_, 0), Rat(0)});
    return out;
  }
  std::vector<long> lo(st), hi(st);
  for (std::size_t j = 0; j < st; ++j) {
    Rat mn = 0, mx = 0;
    for (const auto& c : coords_) {
      mn = std::min(mn, c[j]);
      mx = std::max(mx, c[j]);
    }
    lo[j] = floor_rat(mn * wmax).get_si();
    hi[j] = ceil_rat(mx * wmax).get_si();
  }
  std::vector<long> cur = lo;
  QVec cq(st);
  for (;;) {
    for (std::size_t j = 0; j < st; ++j) cq[j] = Rat(cur[j]);
    Rat w = 0;
    bool ok = true;
    for (const auto& f : facets_) {
      Rat v = linalg::dot(f.form, cq);
      if (f.through_origin) {
        if (v > 0) {
          ok = false;
          break;
        }
      } else if (v > w) {
        w = v;
      }
    }
    if (ok && w <= wmax) {
      ZPoint u(ambient_, 0);
      for (std::size_t j = 0; j < st; ++j)
        for (std::size_t i = 0; i < ambient_; ++i) u[i] += cur[j] * basis_[j][i].get_si();
      out.push_back({std::move(u), w});
    }
    std::size_t j = 0;
    while (j < st && cur[j] == hi[j]) {
      cur[j] = lo[j];
      ++j;
    }
    if (j == st) break;
    ++cur[j];
  }
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.u < b.u;
  });
  return out;
}

PoincareSeries RationalPolytope::poincare_series(int guard) const {
  if (guard < 1) throw Error(Errc::Validation, "guard must be positive");
  PoincareSeries ps;
  ps.span_dim = span_;
  ps.D = D_;
  const long D = D_;
  const long nmax = D * (span_ + 1) + guard * D;
  ps.counts.assign(static_cast<std::size_t>(nmax + 1), 0);
  for (const auto& lp : lattice_points_up_to_weight(make_rat(nmax, D))) {
    Rat scaled = lp.weight * D;
    if (scaled.get_den() != 1) throw Error(Errc::SeriesMismatch, "weight outside (1/D)Z");
    ++ps.counts[static_cast<std::size_t>(scaled.get_num().get_si())];
  }
  std::vector<Int> num(ps.counts.begin(), ps.counts.end());
  for (int k = 0; k < span_; ++k)
    for (long i = nmax; i >= D; --i) num[static_cast<std::size_t>(i)] -= num[static_cast<std::size_t>(i - D)];
  const long top = span_ * D;
  for (long i = top + 1; i <= nmax; ++i)
    if (num[static_cast<std::size_t>(i)] != 0)
      throw Error(Errc::SeriesMismatch, "numerator coefficient of T^" + std::to_string(i) + " is nonzero");
  num.resize(static_cast<std::size_t>(top + 1));
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  for (const auto& c : num)
    if (c < 0) throw Error(Errc::SeriesMismatch, "negative numerator coefficient");
  ps.numerator = std::move(num);
  return ps;
}

}  // namespace toricfam
