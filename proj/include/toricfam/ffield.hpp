#pragma once

// Finite fields F_{p^m} as log/exp tables, towers with embeddings and traces,
// and closed points of tori and affine spaces.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace toricfam {

/// Field element encoded as an integer whose base-p digits are the
/// coefficients of a polynomial in the level's generator polynomial basis.
using Elem = std::uint32_t;

/// Polynomials over F_p, coefficient i of x^i.
namespace fp_poly {
using Poly = std::vector<int>;
void trim(Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, int p);
Poly powmod(Poly a, std::uint64_t e, const Poly& mod, int p);
Poly gcd(Poly a, Poly b, int p);
bool is_irreducible(const Poly& f, int p);
/// The multiplicative order of x modulo f equals p^deg(f) - 1.
bool is_primitive(const Poly& f, int p);
}  // namespace fp_poly

/// F_{p^m} with a fixed modulus and full log/exp tables.
class FieldLevel {
 public:
  FieldLevel(int p, int degree, fp_poly::Poly modulus);

  int p() const { return p_; }
  int degree() const { return m_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t order() const { return size_ - 1; }
  const fp_poly::Poly& modulus() const { return modulus_; }
  /// Encoding of the multiplicative generator used by the tables.
  Elem generator() const { return gen_; }

  Elem exp(std::uint64_t k) const { return exp_[k % order()]; }
  /// Discrete log to the table generator; x must be nonzero.
  std::uint32_t log(Elem x) const { return log_[x]; }
  /// Absolute trace Tr_{F_{p^m}/F_p}(g^k).
  std::uint8_t trace_of_exp(std::uint64_t k) const { return trace_exp_[k % order()]; }
  const std::vector<std::uint8_t>& trace_table() const { return trace_exp_; }
  int trace(Elem x) const { return x == 0 ? 0 : trace_exp_[log_[x]]; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t e) const;
  /// Multiplication by an integer (an element of the prime field).
  Elem scale(Elem a, long k) const;
  /// x -> x^{p^k}.
  Elem frobenius(Elem a, int k = 1) const;
  std::vector<int> digits(Elem a) const;
  Elem from_digits(const std::vector<int>& d) const;

 private:
  int p_;
  int m_;
  std::uint32_t size_;
  fp_poly::Poly modulus_;
  Elem gen_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint8_t> trace_exp_;
  std::vector<std::uint32_t> pow_p_;
};

/// Tower of F_{p^m} for all m, built lazily. Level a (the base field F_q)
/// may use a caller-supplied irreducible modulus; all other levels use the
/// smallest primitive polynomial in scan order.
class FieldTower {
 public:
  static constexpr std::uint64_t kDefaultMaxSize = std::uint64_t{1} << 22;

  FieldTower(int p, int a, std::optional<fp_poly::Poly> base_modulus = std::nullopt,
             std::uint64_t max_size = kDefaultMaxSize);

  int p() const { return p_; }
  int a() const { return a_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t max_size() const { return max_size_; }
  /// True when p^m fits under the table size cap.
  bool feasible(int m) const;
  /// F_{p^m}; throws BudgetExceeded beyond the size cap.
  const FieldLevel& level(int m) const;
  const FieldLevel& base() const { return level(a_); }

  /// log_to(embed(x)) = multiplier * log_from(x); from | to.
  std::uint64_t embed_multiplier(int from, int to) const;
  Elem embed(Elem x, int from, int to) const;
  /// Tr_{F_{p^from} / F_{p^to}} with the result encoded in level `to`.
  Elem relative_trace(Elem x, int from, int to) const;

 private:
  int p_;
  int a_;
  std::uint64_t q_;
  std::uint64_t max_size_;
  std::optional<fp_poly::Poly> base_modulus_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<FieldLevel>> levels_;
  mutable std::map<std::pair<int, int>, std::uint64_t> multipliers_;
};

/// Smallest primitive polynomial of degree m over F_p in scan order
/// (monic, lower coefficients read as a base-p integer).
fp_poly::Poly default_modulus(int p, int m);

enum class SpaceKind { Torus, Affine };

struct ClosedPoint {
  int degree = 1;
  /// Orbit representative, coordinates encoded in level a * degree.
  std::vector<Elem> coords;
};

/// Closed points of degree <= d_max of the torus or affine space of dimension s
/// over F_q, grouped by degree (index d - 1). Counts are checked against the
/// necklace formula.
std::vector<std::vector<ClosedPoint>> closed_points(const FieldTower& tower, SpaceKind kind, int s, int d_max);

/// Number of closed points of exact degree d.
std::uint64_t closed_point_count(std::uint64_t q, SpaceKind kind, int s, int d);

int mobius(int n);

}  // namespace toricfam
