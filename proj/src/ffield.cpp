#include "toricfam/ffield.hpp"

#include <algorithm>
#include <cassert>

#include "toricfam/arith.hpp"
#include "toricfam/error.hpp"

namespace toricfam {

namespace {

int mod_p(long v, int p) { return static_cast<int>(((v % p) + p) % p); }

int inv_mod_p(int a, int p) {
  for (int b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  throw Error(Errc::Validation, "no inverse mod p");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::int64_t inv_mod64(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, aa = a % m;
  if (aa < 0) aa += m;
  std::int64_t r = aa;
  while (r) {
    std::int64_t qt = g / r;
    std::int64_t t = g - qt * r;
    g = r;
    r = t;
    t = x - qt * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw Error(Errc::Validation, "multiplier not invertible");
  return ((x % m) + m) % m;
}

}  // namespace

// ---------------------------------------------------------------- F_p[x]

namespace fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

static Poly polymod(Poly a, const Poly& mod, int p) {
  trim(a);
  const std::size_t dm = mod.size() - 1;
  const int lead_inv = inv_mod_p(mod.back(), p);
  while (a.size() > dm) {
    const int c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod_p(a[shift + i] - c * mod[i], p);
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return polymod(std::move(r), mod, p);
}

Poly powmod(Poly a, std::uint64_t e, const Poly& mod, int p) {
  Poly r = polymod(Poly{1}, mod, p);
  a = polymod(std::move(a), mod, p);
  while (e) {
    if (e & 1U) r = mulmod(r, a, mod, p);
    e >>= 1U;
    if (e) a = mulmod(a, a, mod, p);
  }
  return r;
}

Poly gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = polymod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const int inv = inv_mod_p(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

bool is_irreducible(const Poly& f0, int p) {
  Poly f = f0;
  trim(f);
  const int m = static_cast<int>(f.size()) - 1;
  if (m <= 0) return false;
  if (m == 1) return true;
  Poly h{0, 1};
  for (int k = 1; k <= m / 2; ++k) {
    h = powmod(h, static_cast<std::uint64_t>(p), f, p);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_p(diff[1] - 1, p);
    if (gcd(diff, f, p).size() > 1) return false;
  }
  return true;
}

bool is_primitive(const Poly& f0, int p) {
  Poly f = f0;
  trim(f);
  const int m = static_cast<int>(f.size()) - 1;
  if (m <= 0 || f[0] == 0) return false;
  const std::uint64_t order = ipow(static_cast<std::uint64_t>(p), m) - 1;
  const Poly one = polymod(Poly{1}, f, p);
  const Poly x{0, 1};
  if (powmod(x, order, f, p) != one) return false;
  for (auto l : prime_factors(order))
    if (powmod(x, order / l, f, p) == one) return false;
  return true;
}

}  // namespace fp_poly

fp_poly::Poly default_modulus(int p, int m) {
  const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), m);
  for (std::uint64_t c = 0; c < count; ++c) {
    fp_poly::Poly f(static_cast<std::size_t>(m + 1), 0);
    std::uint64_t v = c;
    for (int i = 0; i < m; ++i) {
      f[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p));
      v /= static_cast<std::uint64_t>(p);
    }
    f[static_cast<std::size_t>(m)] = 1;
    if (fp_poly::is_primitive(f, p)) return f;
  }
  throw Error(Errc::ReducibleModulus, "no primitive polynomial found");
}

// ---------------------------------------------------------------- FieldLevel

FieldLevel::FieldLevel(int p, int degree, fp_poly::Poly modulus)
    : p_(p), m_(degree), size_(static_cast<std::uint32_t>(ipow(static_cast<std::uint64_t>(p), degree))),
      modulus_(std::move(modulus)) {
  if (static_cast<int>(modulus_.size()) != m_ + 1 || modulus_.back() == 0)
    throw Error(Errc::ReducibleModulus, "modulus degree does not match the level");
  // make monic
  const int lead_inv = inv_mod_p(modulus_.back(), p_);
  for (auto& c : modulus_) c = c * lead_inv % p_;
  if (!fp_poly::is_irreducible(modulus_, p_)) throw Error(Errc::ReducibleModulus, "modulus is reducible over F_p");

  pow_p_.resize(static_cast<std::size_t>(m_ + 1));
  pow_p_[0] = 1;
  for (int i = 1; i <= m_; ++i) pow_p_[static_cast<std::size_t>(i)] = pow_p_[static_cast<std::size_t>(i - 1)] * static_cast<std::uint32_t>(p_);

  auto to_poly = [&](Elem e) {
    fp_poly::Poly r(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      r[static_cast<std::size_t>(i)] = static_cast<int>(e % static_cast<std::uint32_t>(p_));
      e /= static_cast<std::uint32_t>(p_);
    }
    return r;
  };
  auto from_poly = [&](fp_poly::Poly r) {
    r.resize(static_cast<std::size_t>(m_), 0);
    Elem e = 0;
    for (int i = m_ - 1; i >= 0; --i) e = e * static_cast<Elem>(p_) + static_cast<Elem>(r[static_cast<std::size_t>(i)]);
    return e;
  };

  const std::uint64_t ord = size_ - 1;
  const bool x_primitive = fp_poly::is_primitive(modulus_, p_);
  fp_poly::Poly gen_poly;
  if (x_primitive) {
    gen_poly = fp_poly::powmod(fp_poly::Poly{0, 1}, 1, modulus_, p_);
  } else {
    const auto factors = prime_factors(ord);
    for (Elem e = 2; e < size_; ++e) {
      fp_poly::Poly g = to_poly(e);
      bool prim = fp_poly::powmod(g, ord, modulus_, p_) == fp_poly::Poly{1};
      for (auto l : factors)
        if (prim && fp_poly::powmod(g, ord / l, modulus_, p_) == fp_poly::Poly{1}) prim = false;
      if (prim) {
        gen_poly = g;
        break;
      }
    }
  }
  gen_ = from_poly(gen_poly);

  exp_.resize(ord);
  log_.assign(size_, UINT32_MAX);
  const bool shift = x_primitive && m_ >= 2;
  Elem cur = 1;
  for (std::uint64_t i = 0; i < ord; ++i) {
    if (log_[cur] != UINT32_MAX) throw Error(Errc::ReducibleModulus, "generator search failed");
    exp_[i] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    if (shift) {
      const Elem top = cur / pow_p_[static_cast<std::size_t>(m_ - 1)];
      Elem low = cur % pow_p_[static_cast<std::size_t>(m_ - 1)];
      Elem next = low * static_cast<Elem>(p_);
      if (top) {
        // x^m = -sum c_i x^i
        Elem sub_val = 0;
        for (int k = m_ - 1; k >= 0; --k)
          sub_val = sub_val * static_cast<Elem>(p_) +
                    static_cast<Elem>(mod_p(static_cast<long>(top) * modulus_[static_cast<std::size_t>(k)], p_));
        next = sub(next, sub_val);
      }
      cur = next;
    } else if (m_ == 1) {
      cur = static_cast<Elem>(static_cast<std::uint64_t>(cur) * gen_ % static_cast<std::uint64_t>(p_));
    } else {
      cur = from_poly(fp_poly::mulmod(to_poly(cur), gen_poly, modulus_, p_));
    }
  }
  if (cur != 1) throw Error(Errc::ReducibleModulus, "generator order mismatch");

  // Absolute traces of the polynomial basis, then of every power of the generator.
  std::vector<int> tb(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) {
    const Elem y = pow_p_[static_cast<std::size_t>(i)];
    Elem t = 0;
    for (int j = 0; j < m_; ++j) t = add(t, frobenius(y, j));
    assert(t < static_cast<Elem>(p_));
    tb[static_cast<std::size_t>(i)] = static_cast<int>(t);
  }
  trace_exp_.resize(ord);
  for (std::uint64_t i = 0; i < ord; ++i) {
    Elem e = exp_[i];
    int t = 0;
    for (int k = 0; k < m_; ++k) {
      t += static_cast<int>(e % static_cast<Elem>(p_)) * tb[static_cast<std::size_t>(k)];
      e /= static_cast<Elem>(p_);
    }
    trace_exp_[i] = static_cast<std::uint8_t>(t % p_);
  }
}

Elem FieldLevel::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (int i = 0; i < m_ && (a || b); ++i) {
    const Elem d = (a % static_cast<Elem>(p_) + b % static_cast<Elem>(p_)) % static_cast<Elem>(p_);
    r += d * pow_p_[static_cast<std::size_t>(i)];
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
  }
  return r;
}

Elem FieldLevel::sub(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (int i = 0; i < m_ && (a || b); ++i) {
    const Elem d = (a % static_cast<Elem>(p_) + static_cast<Elem>(p_) - b % static_cast<Elem>(p_)) % static_cast<Elem>(p_);
    r += d * pow_p_[static_cast<std::size_t>(i)];
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
  }
  return r;
}

Elem FieldLevel::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t k = static_cast<std::uint64_t>(log_[a]) + log_[b];
  return exp_[k % order()];
}

Elem FieldLevel::inv(Elem a) const {
  if (a == 0) throw Error(Errc::Validation, "inverse of zero in a finite field");
  return exp_[(order() - log_[a]) % order()];
}

Elem FieldLevel::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw Error(Errc::Validation, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const auto ord = static_cast<std::int64_t>(order());
  std::int64_t r = e % ord;
  if (r < 0) r += ord;
  return exp_[mulmod64(log_[a], static_cast<std::uint64_t>(r), order())];
}

Elem FieldLevel::scale(Elem a, long k) const {
  const int c = mod_p(k, p_);
  if (c == 0 || a == 0) return 0;
  return mul(a, static_cast<Elem>(c));
}

Elem FieldLevel::frobenius(Elem a, int k) const {
  if (a == 0) return 0;
  std::uint64_t e = 1;
  for (int i = 0; i < k % m_; ++i) e = e * static_cast<std::uint64_t>(p_) % order();
  return exp_[mulmod64(log_[a], e, order())];
}

std::vector<int> FieldLevel::digits(Elem a) const {
  std::vector<int> d(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(a % static_cast<Elem>(p_));
    a /= static_cast<Elem>(p_);
  }
  return d;
}

Elem FieldLevel::from_digits(const std::vector<int>& d) const {
  Elem e = 0;
  for (std::size_t i = d.size(); i-- > 0;) e = e * static_cast<Elem>(p_) + static_cast<Elem>(mod_p(d[i], p_));
  return e;
}

// ---------------------------------------------------------------- FieldTower

FieldTower::FieldTower(int p, int a, std::optional<fp_poly::Poly> base_modulus, std::uint64_t max_size)
    : p_(p), a_(a), q_(ipow(static_cast<std::uint64_t>(p), a)), max_size_(max_size),
      base_modulus_(std::move(base_modulus)) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p > 251) throw Error(Errc::Validation, "trace tables need p < 256");
  if (a < 1) throw Error(Errc::Validation, "extension degree must be positive");
  if (base_modulus_) {
    fp_poly::Poly f = *base_modulus_;
    fp_poly::trim(f);
    if (static_cast<int>(f.size()) != a + 1) throw Error(Errc::ReducibleModulus, "base modulus must have degree a");
    for (auto& c : f) c = mod_p(c, p);
    if (!fp_poly::is_irreducible(f, p)) throw Error(Errc::ReducibleModulus, "base modulus is reducible");
    base_modulus_ = f;
  }
  level(a);
}

bool FieldTower::feasible(int m) const {
  if (m < 1 || m > 40) return false;
  std::uint64_t s = 1;
  for (int i = 0; i < m; ++i) {
    s *= static_cast<std::uint64_t>(p_);
    if (s > max_size_) return false;
  }
  return true;
}

const FieldLevel& FieldTower::level(int m) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = levels_.find(m);
  if (it != levels_.end()) return *it->second;
  if (!feasible(m) && !(m == a_ && base_modulus_))
    throw Error(Errc::BudgetExceeded, "F_{" + std::to_string(p_) + "^" + std::to_string(m) + "} exceeds the table cap");
  fp_poly::Poly mod = (m == a_ && base_modulus_) ? *base_modulus_ : default_modulus(p_, m);
  auto lvl = std::make_unique<FieldLevel>(p_, m, mod);
  const FieldLevel& ref = *lvl;
  levels_.emplace(m, std::move(lvl));
  return ref;
}

std::uint64_t FieldTower::embed_multiplier(int from, int to) const {
  if (to % from != 0) throw Error(Errc::Validation, "embedding needs from | to");
  if (from == to) return 1;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = multipliers_.find({from, to});
    if (it != multipliers_.end()) return it->second;
  }
  const FieldLevel& A = level(from);
  const FieldLevel& C = level(to);
  const std::uint64_t c = C.order() / A.order();
  const auto& mod = A.modulus();
  Elem root = 0;
  bool found = false;
  for (std::uint64_t t = 1; t <= A.order() && !found; ++t) {
    const Elem y = C.exp(t * c);
    Elem v = 0;
    for (std::size_t i = mod.size(); i-- > 0;) v = C.add(C.mul(v, y), static_cast<Elem>(mod[i]));
    if (v == 0) {
      root = y;
      found = true;
    }
  }
  if (!found) throw Error(Errc::ReducibleModulus, "no root of the subfield modulus");
  // image of the generator of A, a polynomial in x evaluated at the root
  const auto g = A.digits(A.generator());
  Elem img = 0;
  for (std::size_t i = g.size(); i-- > 0;) img = C.add(C.mul(img, root), static_cast<Elem>(g[i]));
  const std::uint64_t mult = C.log(img);
  std::lock_guard<std::mutex> lock(mu_);
  multipliers_[{from, to}] = mult;
  return mult;
}

Elem FieldTower::embed(Elem x, int from, int to) const {
  if (x == 0) return 0;
  const std::uint64_t e = embed_multiplier(from, to);
  const FieldLevel& A = level(from);
  const FieldLevel& C = level(to);
  return C.exp(mulmod64(A.log(x), e, C.order()));
}

Elem FieldTower::relative_trace(Elem x, int from, int to) const {
  if (from % to != 0) throw Error(Errc::Validation, "trace needs to | from");
  const FieldLevel& M = level(from);
  const FieldLevel& K = level(to);
  Elem z = 0;
  for (int i = 0; i < from / to; ++i) z = M.add(z, M.frobenius(x, to * i));
  if (z == 0) return 0;
  if (from == to) return z;
  const std::uint64_t c = M.order() / K.order();
  const std::uint64_t L = M.log(z);
  if (L % c != 0) throw Error(Errc::Validation, "trace left the subfield");
  const std::uint64_t t = embed_multiplier(to, from) / c;
  if (K.order() == 1) return 1;
  const auto tinv = static_cast<std::uint64_t>(inv_mod64(static_cast<std::int64_t>(t % K.order()), static_cast<std::int64_t>(K.order())));
  return K.exp(mulmod64(L / c, tinv, K.order()));
}

// ---------------------------------------------------------------- closed points

int mobius(int n) {
  int r = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

std::uint64_t closed_point_count(std::uint64_t q, SpaceKind kind, int s, int d) {
  __int128 total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    __int128 qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    __int128 base = kind == SpaceKind::Torus ? qe - 1 : qe;
    __int128 pts = 1;
    for (int i = 0; i < s; ++i) pts *= base;
    total += mobius(d / e) * pts;
  }
  return static_cast<std::uint64_t>(total / d);
}

std::vector<std::vector<ClosedPoint>> closed_points(const FieldTower& tower, SpaceKind kind, int s, int d_max) {
  std::vector<std::vector<ClosedPoint>> out(static_cast<std::size_t>(std::max(d_max, 0)));
  for (int d = 1; d <= d_max; ++d) {
    const int m = tower.a() * d;
    const FieldLevel& L = tower.level(m);
    double total = 1;
    for (int i = 0; i < s; ++i) total *= L.size();
    if (total > 2e8) throw Error(Errc::BudgetExceeded, "closed point enumeration too large at degree " + std::to_string(d));
    const Elem lo = kind == SpaceKind::Torus ? 1 : 0;
    std::vector<Elem> cur(static_cast<std::size_t>(s), lo);
    std::vector<Elem> conj(static_cast<std::size_t>(s));
    auto& bucket = out[static_cast<std::size_t>(d - 1)];
    for (bool more = true; more;) {
      int degree = d;
      bool canonical = true;
      for (int e = 1; e < d; ++e) {
        for (std::size_t i = 0; i < cur.size(); ++i) conj[i] = L.frobenius(cur[i], tower.a() * e);
        if (conj == cur) {
          degree = e;
          break;
        }
        if (conj < cur) canonical = false;
      }
      if (degree == d && canonical) bucket.push_back(ClosedPoint{d, cur});
      std::size_t j = 0;
      while (j < cur.size() && cur[j] == L.size() - 1) {
        cur[j] = lo;
        ++j;
      }
      if (j == cur.size()) more = false;
      else ++cur[j];
    }
    // lexicographic order of coordinate tuples
    std::sort(bucket.begin(), bucket.end(), [](const ClosedPoint& a, const ClosedPoint& b) { return a.coords < b.coords; });
    if (bucket.size() != closed_point_count(tower.q(), kind, s, d))
      throw Error(Errc::CountMismatch, "degree " + std::to_string(d) + ": found " + std::to_string(bucket.size()) +
                                           ", expected " + std::to_string(closed_point_count(tower.q(), kind, s, d)));
  }
  return out;
}

}  // namespace toricfam
