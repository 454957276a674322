#pragma once

// Families G = f + P over a torus or affine base: the relative polytope,
// linear-algebra operations on fiber roots, and the degree, total-degree and
// divisibility bound calculators.

#include <optional>
#include <string>
#include <vector>

#include "toricfam/expsum.hpp"
#include "toricfam/ffield.hpp"
#include "toricfam/toric.hpp"

namespace toricfam {

struct PTerm {
  ZPoint gamma;  // parameter exponent, length s
  ZPoint mu;     // fiber exponent, length n
  Elem coeff = 0;
};

struct FamilySpec {
  int p = 2;
  int a = 1;
  std::optional<fp_poly::Poly> modulus;
  int n = 1;
  int s = 1;
  std::vector<std::pair<ZPoint, Elem>> f_terms;
  std::vector<PTerm> P_terms;
  SpaceKind base = SpaceKind::Torus;
  /// Fiber variables ranging over the affine line; empty for a torus fiber.
  std::vector<int> S2;

  PointSpace fiber_space() const { return PointSpace::mixed(n, S2); }
};

/// Checks the structural invariants of a spec (exponent lengths, affine base
/// exponents, full-dimensional Delta, P weights below one).
void validate(const FamilySpec& spec, const FieldTower& tower);

LaurentPoly family_f(const FamilySpec& spec, const FieldTower& tower);
/// G_lambda over F_{p^{a d}} for lambda with coordinates in that level.
LaurentPoly fiber_poly(const FamilySpec& spec, const FieldTower& tower, int d, const std::vector<Elem>& lambda);
/// G as a polynomial in the n + s variables (x, t).
LaurentPoly total_poly(const FamilySpec& spec, const FieldTower& tower);
/// Expected fiber degree: n! vol(Delta) for a torus fiber, upsilon otherwise.
long fiber_degree(const FamilySpec& spec, const FieldTower& tower);

struct RelativePolytope {
  RationalPolytope gamma;
  int s_tilde = 0;
  Rat volume;
  long D = 1;
};

/// Gamma = hull({0} and gamma / (1 - w(mu))); `drop` lists parameters set to zero.
RelativePolytope relative_polytope(const FamilySpec& spec, const FieldTower& tower, const std::vector<int>& drop = {});

/// min w(u) over lattice points of the cone with every coordinate >= 1.
std::optional<Rat> w_gamma_min(const RationalPolytope& P);

// ---------------------------------------------------------------- operations

struct LinOp {
  enum class Kind { Sym, Ext, TensorPow, Prod };
  Kind kind = Kind::Sym;
  int k = 1;
  std::vector<LinOp> factors;

  static LinOp sym(int k) { return {Kind::Sym, k, {}}; }
  static LinOp ext(int l) { return {Kind::Ext, l, {}}; }
  static LinOp tensor(int k) { return {Kind::TensorPow, k, {}}; }
  static LinOp prod(std::vector<LinOp> fs) { return {Kind::Prod, 0, std::move(fs)}; }
  std::string to_string() const;
};

/// Parses Sym(k), Ext(l), TensorPow(k) and Prod(op, op, ...).
LinOp parse_linop(const std::string& text);

struct LinOpDim {
  Int dim;    // L N
  int order;  // |L|
};
LinOpDim lin_op_dim(const LinOp& op, long N);

/// det(1 - op(Frob) T) from P = det(1 - Frob T) of degree N.
std::vector<CycRat> local_factor_transform(const std::vector<CycRat>& P, const LinOp& op, long N);
std::vector<CycRat> local_factor_transform(const std::vector<CycInt>& P, const LinOp& op, long N);

/// Weights of the op basis vectors built from fiber weights, sorted.
std::vector<Rat> basis_weights(const LinOp& op, const std::vector<Rat>& fiber_weights);

// ---------------------------------------------------------------- bounds

/// A bound with its exact value when rational, an interval-certified floor
/// otherwise, and the formula it instantiates.
struct BoundValue {
  std::optional<Rat> exact;
  double approx = 0;
  Int floor;
  std::string anchor;
  std::string formula;
};

/// C * 2^E * (1 + 2^F)^rho with C >= 0.
BoundValue pow2_bound(const Rat& C, const Rat& E, const Rat& F, long rho, std::string anchor, std::string formula);

struct Theorem1Bounds {
  bool forced_equal = false;  // s~ < s gives R = S
  Rat degree_lo;
  Rat degree_hi;
  Int degree_hi_floor;
  BoundValue total;
  std::optional<BoundValue> total_slight;
};

/// Degree window and total-degree bound over a torus base; d > 0 also
/// evaluates the slightly stronger total-degree form.
Theorem1Bounds bounds_theorem1(const RelativePolytope& G, int s, int n, const LinOpDim& op, long d = 0);

struct GammaATerm {
  std::vector<int> A;
  int s_tilde = 0;
  Rat volume;     // lattice volume in the span; 1 for the point {0}
  Rat weighted;   // (s - |A|)! vol
};

struct Theorem2Bounds {
  std::optional<Rat> w_gamma;
  std::vector<GammaATerm> faces;
  Rat degree_lo;
  Rat degree_hi;
  BoundValue total;
  /// w(Gamma) + w(Delta) L N~ (fully affine case).
  std::optional<Rat> affine_floor;
  /// w(Gamma) + min basis weight.
  std::optional<Rat> basis_floor;
};

Theorem2Bounds bounds_theorem2(const FamilySpec& spec, const FieldTower& tower, const LinOp& op, long N,
                               const std::vector<Rat>& fiber_weights = {});

struct BoundProfile {
  Rat bp1;                 // b (p - 1)
  long e = 1;
  std::vector<Rat> cols;   // s(i) / e
  long d = 0;              // 0: smallest admissible
  int k = 0;               // bound on ord_q of the roots
};

/// Profile of the family L-function: b(p-1) = 1, e = p - 1, s(i)/e the basis
/// weights, k = s + n |L|.
BoundProfile theorem1_profile(const std::vector<Rat>& basis_w, long p, int s, int n, int order);

struct DworkBound {
  long d = 1;
  std::vector<long> W;
  NewtonPolygon polygon;
  Rat degree_bound;
  std::optional<BoundValue> total_slight;
};

/// W(j) table and the lower-hull Newton polygon bound up to abscissa `extent`
/// (s = 0 when G is null). UnboundedRequest beyond the enumeration budget.
DworkBound dwork_np_lower_bound(const BoundProfile& prof, const RelativePolytope* G, int s, long extent,
                                long point_budget = 2000000);

enum class Verdict { Pass, Fail, Inapplicable, Inconclusive };
std::string verdict_name(Verdict v);

struct QRelated {
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<int, CycPoly>> matched;  // (m, gcd factor)
  CycPoly unmatched;
};

QRelated q_related_check(const CycPoly& num, const CycPoly& den, const Int& q, int m_max);

}  // namespace toricfam
