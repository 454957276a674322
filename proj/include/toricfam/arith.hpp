#pragma once

// Exact arithmetic: GMP integers/rationals, the cyclotomic ring Z[zeta_p]
// and its fraction field, p-adic valuations via field norms.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace toricfam {

using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
std::string to_string(const Rat& r);
/// Largest integer <= r.
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);
/// p-adic valuation of a nonzero integer.
long int_valuation(const Int& x, long p);
bool is_prime(long p);

/// Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}.
///
/// The basis is reduced modulo Phi_p, so two elements are equal iff their
/// coefficient vectors are equal. For p = 2 the ring is Z (zeta = -1).
class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(long p, const Int& value = 0);
  CycInt(long p, std::vector<Int> coeffs);  // length p-1, already canonical

  /// zeta^k for any integer k.
  static CycInt zeta_pow(long p, long k);
  /// Sum over residues r of counts[r] * zeta^r; counts has length p.
  static CycInt from_residue_counts(long p, const std::vector<long long>& counts);

  long prime() const { return p_; }
  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const;
  /// True iff the element lies in Z (all non-constant coefficients vanish).
  bool is_integer() const;
  /// gcd of the coefficients (0 for the zero element).
  Int content() const;
  /// Galois conjugate zeta -> zeta^k, gcd(k, p) = 1.
  CycInt conjugate(long k) const;
  /// Exact division of every coefficient by an integer.
  CycInt divexact(const Int& d) const;

  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt& operator*=(const CycInt& o);
  CycInt& operator*=(const Int& k);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
  friend CycInt operator*(CycInt a, const Int& k) { return a *= k; }
  CycInt operator-() const;
  CycInt pow(unsigned e) const;
  friend bool operator==(const CycInt& a, const CycInt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void check_same(const CycInt& o) const;
  long p_ = 2;
  std::vector<Int> c_{Int(0)};
};

/// Element of Q(zeta_p) as num/den with den > 0 and gcd(content(num), den) = 1.
class CycRat {
 public:
  CycRat() = default;
  explicit CycRat(long p, const Rat& value = 0);
  CycRat(const CycInt& num, const Int& den = 1);  // NOLINT(google-explicit-constructor)

  long prime() const { return num_.prime(); }
  const CycInt& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  CycRat& operator+=(const CycRat& o);
  CycRat& operator-=(const CycRat& o);
  CycRat& operator*=(const CycRat& o);
  CycRat& operator/=(const CycRat& o);
  friend CycRat operator+(CycRat a, const CycRat& b) { return a += b; }
  friend CycRat operator-(CycRat a, const CycRat& b) { return a -= b; }
  friend CycRat operator*(CycRat a, const CycRat& b) { return a *= b; }
  friend CycRat operator/(CycRat a, const CycRat& b) { return a /= b; }
  CycRat operator-() const;
  CycRat inverse() const;
  friend bool operator==(const CycRat& a, const CycRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;

 private:
  void normalize();
  CycInt num_;
  Int den_ = 1;
};

/// N_{Q(zeta_p)/Q}(x), computed as the determinant of multiplication by x.
Int cyc_norm(const CycInt& x);

/// A p-adic valuation: `value` is ord_p (nullopt = +infinity); ord_q = ord_p / scale.
struct PadicVal {
  std::optional<Rat> value;
  long scale = 1;

  bool is_infinite() const { return !value.has_value(); }
  std::optional<Rat> ord_q() const;
};

/// ord_p(x) = ord_p(N(x)) / (p - 1); the scale a gives ord_q = ord_p / a.
PadicVal ord_p(const CycInt& x, long a = 1);
PadicVal ord_p(const CycRat& x, long a = 1);

/// Dense univariate polynomial / truncated power series over Q(zeta_p);
/// index i holds the coefficient of T^i.
using CycPoly = std::vector<CycRat>;

namespace poly {

CycPoly one(long p);
/// Drop trailing zero coefficients (keeps at least the constant term).
void trim(CycPoly& a);
long degree(const CycPoly& a);  // -1 for the zero polynomial
CycPoly add(const CycPoly& a, const CycPoly& b);
CycPoly mul(const CycPoly& a, const CycPoly& b);
/// a * b mod T^{terms}.
CycPoly mul_trunc(const CycPoly& a, const CycPoly& b, std::size_t terms);
/// 1/a mod T^{terms}; a(0) must be invertible.
CycPoly inverse_series(const CycPoly& a, std::size_t terms);
/// exp(sum_{r>=1} power_sums[r-1] T^r / r) mod T^{terms}.
CycPoly exp_log_series(const std::vector<CycRat>& power_sums, std::size_t terms, long p);
/// a(c T).
CycPoly scale_variable(const CycPoly& a, const CycRat& c);
/// (quotient, remainder) of Euclidean division; b nonzero.
std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b);
/// Greatest common divisor normalized to constant term 1 when that term is nonzero,
/// otherwise made monic.
CycPoly gcd(CycPoly a, CycPoly b);

}  // namespace poly

}  // namespace toricfam
