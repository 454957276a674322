#include "toricfam/arith.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "toricfam/error.hpp"

namespace toricfam {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

long int_valuation(const Int& x, long p) {
  assert(x != 0);
  Int y = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
    y /= p;
    ++v;
  }
  return v;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- CycInt

CycInt::CycInt(long p, const Int& value) : p_(p), c_(static_cast<std::size_t>(p - 1), Int(0)) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "cyclotomic ring needs a prime, got " + std::to_string(p));
  c_[0] = value;
}

CycInt::CycInt(long p, std::vector<Int> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "cyclotomic ring needs a prime, got " + std::to_string(p));
  if (c_.size() != static_cast<std::size_t>(p - 1))
    throw Error(Errc::DimensionMismatch, "CycInt needs p-1 coefficients");
}

CycInt CycInt::zeta_pow(long p, long k) {
  std::vector<long long> counts(static_cast<std::size_t>(p), 0);
  counts[static_cast<std::size_t>(((k % p) + p) % p)] = 1;
  return from_residue_counts(p, counts);
}

CycInt CycInt::from_residue_counts(long p, const std::vector<long long>& counts) {
  CycInt r(p);
  // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
  const long long top = counts[static_cast<std::size_t>(p - 1)];
  for (long i = 0; i + 1 < p; ++i) r.c_[static_cast<std::size_t>(i)] = Int(static_cast<long>(counts[static_cast<std::size_t>(i)] - top));
  return r;
}

bool CycInt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Int& v) { return v == 0; });
}

bool CycInt::is_integer() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Int& v) { return v == 0; });
}

Int CycInt::content() const {
  Int g = 0;
  for (const auto& v : c_) g = gcd(g, v);
  return g;
}

CycInt CycInt::conjugate(long k) const {
  k = ((k % p_) + p_) % p_;
  assert(k != 0);
  std::vector<Int> full(static_cast<std::size_t>(p_), Int(0));
  for (long i = 0; i + 1 < p_; ++i) full[static_cast<std::size_t>((i * k) % p_)] += c_[static_cast<std::size_t>(i)];
  CycInt r(p_);
  for (long i = 0; i + 1 < p_; ++i) r.c_[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>(i)] - full[static_cast<std::size_t>(p_ - 1)];
  return r;
}

CycInt CycInt::divexact(const Int& d) const {
  CycInt r = *this;
  for (auto& v : r.c_) {
    assert(mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()));
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

void CycInt::check_same(const CycInt& o) const {
  if (p_ != o.p_) throw Error(Errc::DimensionMismatch, "mixing cyclotomic rings of different primes");
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) {
  check_same(o);
  const auto p = static_cast<std::size_t>(p_);
  std::vector<Int> full(p, Int(0));
  for (std::size_t i = 0; i + 1 < p; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j + 1 < p; ++j) {
      if (o.c_[j] == 0) continue;
      full[(i + j) % p] += c_[i] * o.c_[j];
    }
  }
  for (std::size_t i = 0; i + 1 < p; ++i) c_[i] = full[i] - full[p - 1];
  return *this;
}

CycInt& CycInt::operator*=(const Int& k) {
  for (auto& v : c_) v *= k;
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CycInt CycInt::pow(unsigned e) const {
  CycInt result(p_, 1);
  CycInt base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    Int a = abs(c_[i]);
    if (i == 0) os << a;
    else {
      if (a != 1) os << a << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- norm

Int cyc_norm(const CycInt& x) {
  const long p = x.prime();
  const auto n = static_cast<std::size_t>(p - 1);
  if (n == 1) return x.coeffs()[0];
  // Column j holds x * zeta^j.
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (std::size_t j = 0; j < n; ++j) {
    CycInt col = x * CycInt::zeta_pow(p, static_cast<long>(j));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coeffs()[i];
  }
  // Fraction-free Bareiss elimination.
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------- CycRat

CycRat::CycRat(long p, const Rat& value) : num_(p, value.get_num()), den_(value.get_den()) {}

CycRat::CycRat(const CycInt& num, const Int& den) : num_(num), den_(den) {
  if (den_ == 0) throw Error(Errc::Validation, "zero denominator");
  normalize();
}

void CycRat::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Int g = gcd(num_.content(), den_);
  if (g != 1) {
    num_ = num_.divexact(g);
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

CycRat& CycRat::operator+=(const CycRat& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycRat& CycRat::operator-=(const CycRat& o) { return *this += -o; }

CycRat& CycRat::operator*=(const CycRat& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

CycRat CycRat::inverse() const {
  if (is_zero()) throw Error(Errc::Validation, "inverse of zero in Q(zeta_p)");
  const long p = prime();
  // x^{-1} = prod_{k=2}^{p-1} sigma_k(x) / N(x)
  CycInt others(p, 1);
  for (long k = 2; k < p; ++k) others *= num_.conjugate(k);
  Int norm = cyc_norm(num_);
  return CycRat(others * den_, norm);
}

CycRat& CycRat::operator/=(const CycRat& o) { return *this *= o.inverse(); }

CycRat CycRat::operator-() const {
  CycRat r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string CycRat::to_string() const {
  if (den_ == 1) return num_.to_string();
  return "(" + num_.to_string() + ")/" + den_.get_str();
}

// ---------------------------------------------------------------- valuations

std::optional<Rat> PadicVal::ord_q() const {
  if (!value) return std::nullopt;
  Rat r = *value / Rat(scale);
  r.canonicalize();
  return r;
}

PadicVal ord_p(const CycInt& x, long a) {
  if (x.is_zero()) return PadicVal{std::nullopt, a};
  Int n = cyc_norm(x);
  Rat v(int_valuation(n, x.prime()), x.prime() - 1);
  v.canonicalize();
  return PadicVal{v, a};
}

PadicVal ord_p(const CycRat& x, long a) {
  if (x.is_zero()) return PadicVal{std::nullopt, a};
  PadicVal v = ord_p(x.num(), a);
  *v.value -= Rat(int_valuation(x.den(), x.prime()));
  return v;
}

// ---------------------------------------------------------------- polynomials

namespace poly {

CycPoly one(long p) { return CycPoly{CycRat(p, 1)}; }

void trim(CycPoly& a) {
  while (a.size() > 1 && a.back().is_zero()) a.pop_back();
}

long degree(const CycPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (!a[i].is_zero()) return static_cast<long>(i);
  return -1;
}

CycPoly add(const CycPoly& a, const CycPoly& b) {
  CycPoly r = a.size() >= b.size() ? a : b;
  const CycPoly& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
  trim(r);
  return r;
}

CycPoly mul(const CycPoly& a, const CycPoly& b) {
  if (a.empty() || b.empty()) return {};
  CycPoly r(a.size() + b.size() - 1, CycRat(a[0].prime()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

CycPoly mul_trunc(const CycPoly& a, const CycPoly& b, std::size_t terms) {
  if (a.empty() || b.empty()) return CycPoly(terms, CycRat(2));
  CycPoly r(terms, CycRat(a[0].prime()));
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

CycPoly inverse_series(const CycPoly& a, std::size_t terms) {
  const long p = a.at(0).prime();
  CycRat inv0 = a[0].inverse();
  CycPoly r(terms, CycRat(p));
  if (terms == 0) return r;
  r[0] = inv0;
  for (std::size_t m = 1; m < terms; ++m) {
    CycRat acc(p);
    for (std::size_t i = 1; i <= m && i < a.size(); ++i)
      if (!a[i].is_zero()) acc += a[i] * r[m - i];
    r[m] = -(acc * inv0);
  }
  return r;
}

CycPoly exp_log_series(const std::vector<CycRat>& power_sums, std::size_t terms, long p) {
  CycPoly c(terms, CycRat(p));
  if (terms == 0) return c;
  c[0] = CycRat(p, 1);
  // m c_m = sum_{r=1}^{m} s_r c_{m-r}
  for (std::size_t m = 1; m < terms; ++m) {
    CycRat acc(p);
    for (std::size_t r = 1; r <= m && r <= power_sums.size(); ++r)
      if (!power_sums[r - 1].is_zero()) acc += power_sums[r - 1] * c[m - r];
    c[m] = acc * CycRat(p, Rat(1, static_cast<long>(m)));
  }
  return c;
}

CycPoly scale_variable(const CycPoly& a, const CycRat& c) {
  CycPoly r = a;
  if (a.empty()) return r;
  CycRat pw(a[0].prime(), 1);
  for (auto& coef : r) {
    coef *= pw;
    pw *= c;
  }
  return r;
}

std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b) {
  const long db = degree(b);
  if (db < 0) throw Error(Errc::Validation, "polynomial division by zero");
  const long p = b[0].prime();
  CycPoly rem = a;
  trim(rem);
  const long da = degree(rem);
  if (da < db) return {CycPoly{CycRat(p)}, rem};
  CycPoly quo(static_cast<std::size_t>(da - db + 1), CycRat(p));
  CycRat lead_inv = b[static_cast<std::size_t>(db)].inverse();
  for (long k = da; k >= db; --k) {
    const CycRat coef = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (coef.is_zero()) continue;
    quo[static_cast<std::size_t>(k - db)] = coef;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= coef * b[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max<long>(db, 1)), CycRat(p));
  trim(rem);
  trim(quo);
  return {quo, rem};
}

CycPoly gcd(CycPoly a, CycPoly b) {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (degree(a) < 0) return a;
  const CycRat norm = !a[0].is_zero() ? a[0] : a[static_cast<std::size_t>(degree(a))];
  const CycRat inv = norm.inverse();
  for (auto& c : a) c *= inv;
  return a;
}

}  // namespace poly

}  // namespace toricfam
