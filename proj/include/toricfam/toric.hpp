#pragma once

// Laurent polynomials over F_{p^m}, their Newton polytope at infinity,
// nondegeneracy, the graded monomial basis with weights, and the
// convenient-volume sum for mixed torus/affine spaces.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "toricfam/ffield.hpp"
#include "toricfam/polytope.hpp"

namespace toricfam {

struct LaurentPoly {
  int n = 0;
  /// Coefficients live in F_{p^level}.
  int level = 1;
  std::map<ZPoint, Elem> terms;

  LaurentPoly() = default;
  LaurentPoly(int n_vars, int lvl) : n(n_vars), level(lvl) {}

  /// Accumulate c x^e; zero results are erased.
  void add_term(const FieldLevel& F, const ZPoint& e, Elem c);
  /// Accumulate an integer coefficient (reduced mod p).
  void add_int_term(const FieldLevel& F, const ZPoint& e, long c) { add_term(F, e, F.scale(1, c)); }
  std::vector<ZPoint> support() const;
  bool is_zero() const { return terms.empty(); }
};

struct NewtonData {
  RationalPolytope delta;
  /// Closed faces of delta avoiding the origin.
  std::vector<Face> faces;
};

NewtonData newton_data(const LaurentPoly& f);

/// Support points of f lying on the face.
std::vector<ZPoint> face_support(const NewtonData& nd, const Face& face, const LaurentPoly& f);

struct NondegResult {
  bool degenerate = false;
  /// Extension degree k (over the coefficient field) the search reached.
  int certified_up_to = 0;
  /// True when every face was decided over the algebraic closure.
  bool exact = true;
  std::optional<Face> face;
  std::vector<ZPoint> face_points;
  int witness_level = 0;  // witness coordinates are encoded in F_{p^witness_level}
  std::vector<Elem> witness;
};

/// Vertex and edge faces are decided exactly; higher faces are searched over
/// (F_{p^{level k}}^*)^n for k <= k_max within the point budget.
NondegResult is_nondegenerate(const LaurentPoly& f, const FieldTower& tower, int k_max, double point_budget = 2e7);

/// Non-origin facets attaining w(u); throws NotInCone.
std::uint64_t max_facets(const RationalPolytope& delta, const ZPoint& u);
bool cofacial(const RationalPolytope& delta, const ZPoint& mu, const ZPoint& nu);

struct HodgeBasis {
  std::vector<ZPoint> monomials;
  std::vector<Rat> weights;
  long D = 1;
};

using MonomialOrder = std::function<bool(const ZPoint&, const ZPoint&)>;
/// Lexicographic under 0, 1, -1, 2, -2, ... in each coordinate.
bool zigzag_less(const ZPoint& a, const ZPoint& b);

HodgeBasis hodge_basis(const LaurentPoly& f, const FieldTower& tower, const MonomialOrder& prefer = zigzag_less);

/// sum over A in S2 of (-1)^{|A|} (n-|A|)! vol(Delta(f_A)).
Rat upsilon(const LaurentPoly& f, const std::vector<int>& S2);

}  // namespace toricfam
