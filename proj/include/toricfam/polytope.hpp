#pragma once

// Rational polytopes containing the origin: hull, facets, faces, lattice
// volume, the polyhedral weight function and its Poincare series.

#include <cstdint>
#include <optional>
#include <vector>

#include "toricfam/arith.hpp"
#include "toricfam/linalg.hpp"

namespace toricfam {

using QPoint = QVec;
using ZPoint = std::vector<long>;

QPoint to_qpoint(const ZPoint& z);

/// Supporting hyperplane of a facet, in lattice coordinates of the span.
/// Facets avoiding the origin are scaled so that form . x = 1 on the facet
/// (and <= 1 on the polytope); facets through the origin satisfy form . x = 0
/// on the facet and <= 0 on the polytope.
struct Facet {
  QVec form;          // lattice coordinates
  QVec ambient_form;  // an ambient linear form with the same restriction to the span
  bool through_origin = false;
  std::uint64_t vertices = 0;  // bitmask into RationalPolytope::vertices()
};

struct Face {
  std::uint64_t vertices = 0;
  int dim = 0;
  bool contains_origin = false;
};

struct LatticePoint {
  ZPoint u;
  Rat weight;
};

struct PoincareSeries {
  std::vector<Int> numerator;  // coefficients of T^i
  int span_dim = 0;
  long D = 1;
  std::vector<long> counts;  // W'(N) for the computed range
};

class RationalPolytope {
 public:
  /// Convex hull of the points together with the origin.
  static RationalPolytope build(const std::vector<QPoint>& points, std::size_t ambient_dim);
  static RationalPolytope build_integral(const std::vector<ZPoint>& points, std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  int span_dim() const { return span_; }
  const std::vector<QPoint>& vertices() const { return vertices_; }
  /// Vertices in lattice coordinates of the span.
  const std::vector<QVec>& vertex_coords() const { return coords_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Every nonempty face, including the polytope itself.
  const std::vector<Face>& faces() const { return faces_; }
  std::vector<QPoint> face_vertices(const Face& f) const;
  /// Rows form a basis of (span) intersect Z^s.
  const ZMat& lattice_basis() const { return basis_; }

  Rat normalized_volume() const { return volume_; }
  /// Smallest positive D with w(lattice points) in (1/D) Z.
  long denominator() const { return D_; }

  /// Coordinates in the lattice basis, or nullopt when the point is off the span.
  std::optional<QVec> coords(const QPoint& x) const;
  bool in_cone(const QPoint& x) const;
  /// w(x) = least c >= 0 with x in c * P; nullopt when x is outside the cone.
  std::optional<Rat> weight(const QPoint& x) const;
  std::optional<Rat> weight(const ZPoint& u) const { return weight(to_qpoint(u)); }
  bool contains(const QPoint& x) const;

  /// All u in M(P) with w(u) <= wmax, sorted by weight then lexicographically.
  std::vector<LatticePoint> lattice_points_up_to_weight(const Rat& wmax) const;
  /// W'(N) = #{u : w(u) = N/D} for N <= D(s~+1) + guard*D and the numerator
  /// P with sum W'(N) T^N = P(T) / (1 - T^D)^{s~}.
  PoincareSeries poincare_series(int guard = 1) const;

 private:
  std::size_t ambient_ = 0;
  int span_ = 0;
  std::vector<QPoint> vertices_;
  std::vector<QVec> coords_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
  ZMat basis_;
  QMat coord_map_;  // ambient x -> x * coord_map_ (s x s~)
  QMat kernel_;     // ambient x is on the span iff x . column = 0 for each row
  Rat volume_ = 0;
  long D_ = 1;
};

}  // namespace toricfam
