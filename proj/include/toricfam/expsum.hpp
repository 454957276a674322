#pragma once

// Additive character sums, fiber L-polynomials and their Newton polygons.

#include <vector>

#include "toricfam/arith.hpp"
#include "toricfam/toric.hpp"

namespace toricfam {

/// Which variables range over the whole field (the rest range over units).
struct PointSpace {
  std::vector<bool> affine;

  static PointSpace torus(int n) { return {std::vector<bool>(static_cast<std::size_t>(n), false)}; }
  static PointSpace affine_space(int n) { return {std::vector<bool>(static_cast<std::size_t>(n), true)}; }
  static PointSpace mixed(int n, const std::vector<int>& S2);
  std::vector<int> affine_indices() const;
  bool is_torus() const;
};

/// sum over x in the space over F_{p^{level r}} of zeta_p^{Tr G(x)}.
CycInt exp_sum(const LaurentPoly& G, const FieldTower& tower, int r, const PointSpace& space, int threads = 1);

/// (Q^r)^n with Q = p^level; the enumeration cost of exp_sum.
double exp_sum_cost(const LaurentPoly& G, const FieldTower& tower, int r);

struct LPolynomial {
  /// coeffs[i] is the coefficient of T^i; coeffs[0] = 1.
  std::vector<CycInt> coeffs;
  /// S_1 .. S_{N + guard}.
  std::vector<CycInt> sums;
  int guard = 0;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// L(G, T)^{(-1)^{n+1}} as a polynomial of degree n_expected, verified on
/// `guard` further coefficients. guard < 0 selects max(3, N).
LPolynomial fiber_lpoly(const LaurentPoly& G, const FieldTower& tower, const PointSpace& space, int n_expected,
                        int guard = -1, int threads = 1);

struct PolyVertex {
  long x;
  Rat y;
  friend bool operator==(const PolyVertex& a, const PolyVertex& b) { return a.x == b.x && a.y == b.y; }
};

struct NewtonPolygon {
  std::vector<PolyVertex> vertices;

  /// Slopes with multiplicity, nondecreasing.
  std::vector<Rat> slopes() const;
  /// Height at an integer abscissa within range.
  Rat at(long x) const;
  long length() const { return vertices.empty() ? 0 : vertices.back().x; }
  friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) { return a.vertices == b.vertices; }
};

/// Lower convex hull of points (x_i, y_i), x_i increasing and starting at 0.
NewtonPolygon lower_hull(const std::vector<std::pair<long, Rat>>& pts);

/// Lower hull of (i, ord_p(c_i) / (a deg_lambda)).
NewtonPolygon newton_polygon(const std::vector<CycInt>& coeffs, long a, long deg_lambda);
NewtonPolygon newton_polygon(const std::vector<CycRat>& coeffs, long a, long deg_lambda);
/// Polygon with the given slopes.
NewtonPolygon polygon_from_slopes(std::vector<Rat> slopes);
NewtonPolygon hodge_polygon(const HodgeBasis& hb);

/// upper lies on or above lower at every integer abscissa and both end at the same x.
bool dominates(const NewtonPolygon& upper, const NewtonPolygon& lower);

}  // namespace toricfam
