#include "toricfam/family.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>

#include "toricfam/cycmat.hpp"
#include "toricfam/error.hpp"

namespace toricfam {

namespace {

Int factorial(long n) {
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rat rat_pow2(long e) {
  Rat r = 1;
  if (e >= 0) {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
    r = Rat(v);
  } else {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    r = Rat(Int(1), v);
  }
  r.canonicalize();
  return r;
}

}  // namespace

// ---------------------------------------------------------------- spec

LaurentPoly family_f(const FamilySpec& spec, const FieldTower& tower) {
  LaurentPoly f(spec.n, spec.a);
  for (const auto& [e, c] : spec.f_terms) f.add_term(tower.base(), e, c);
  return f;
}

void validate(const FamilySpec& spec, const FieldTower& tower) {
  if (spec.n < 1) throw Error(Errc::Validation, "n must be positive");
  if (spec.s < 0) throw Error(Errc::Validation, "s must be nonnegative");
  if (tower.p() != spec.p || tower.a() != spec.a) throw Error(Errc::Validation, "tower does not match the family field");
  for (const auto& [e, c] : spec.f_terms)
    if (static_cast<int>(e.size()) != spec.n) throw Error(Errc::DimensionMismatch, "f exponent length differs from n");
  for (const auto& t : spec.P_terms) {
    if (static_cast<int>(t.mu.size()) != spec.n) throw Error(Errc::DimensionMismatch, "P exponent mu has wrong length");
    if (static_cast<int>(t.gamma.size()) != spec.s) throw Error(Errc::DimensionMismatch, "P exponent gamma has wrong length");
    if (spec.base == SpaceKind::Affine)
      for (long g : t.gamma)
        if (g < 0) throw Error(Errc::Validation, "affine base needs nonnegative parameter exponents");
  }
  const auto nd = newton_data(family_f(spec, tower));
  if (nd.delta.span_dim() != spec.n) throw Error(Errc::DimensionDeficient, "Delta is not full-dimensional");
  for (const auto& t : spec.P_terms) {
    const auto w = nd.delta.weight(t.mu);
    if (!w) throw Error(Errc::NotInCone, "P exponent outside the cone of Delta");
    if (*w >= 1) throw Error(Errc::WeightOne, "P term has w(mu) = " + to_string(*w) + " >= 1");
  }
}

LaurentPoly fiber_poly(const FamilySpec& spec, const FieldTower& tower, int d, const std::vector<Elem>& lambda) {
  if (static_cast<int>(lambda.size()) != spec.s) throw Error(Errc::DimensionMismatch, "lambda has wrong length");
  const int lvl = spec.a * d;
  const FieldLevel& L = tower.level(lvl);
  LaurentPoly g(spec.n, lvl);
  for (const auto& [e, c] : spec.f_terms) g.add_term(L, e, tower.embed(c, spec.a, lvl));
  for (const auto& t : spec.P_terms) {
    Elem c = tower.embed(t.coeff, spec.a, lvl);
    for (int i = 0; i < spec.s && c != 0; ++i) {
      const long gi = t.gamma[static_cast<std::size_t>(i)];
      if (gi != 0) c = L.mul(c, L.pow(lambda[static_cast<std::size_t>(i)], gi));
    }
    g.add_term(L, t.mu, c);
  }
  return g;
}

LaurentPoly total_poly(const FamilySpec& spec, const FieldTower& tower) {
  LaurentPoly g(spec.n + spec.s, spec.a);
  for (const auto& [e, c] : spec.f_terms) {
    ZPoint x = e;
    x.resize(static_cast<std::size_t>(spec.n + spec.s), 0);
    g.add_term(tower.base(), x, c);
  }
  for (const auto& t : spec.P_terms) {
    ZPoint x = t.mu;
    x.insert(x.end(), t.gamma.begin(), t.gamma.end());
    g.add_term(tower.base(), x, t.coeff);
  }
  return g;
}

long fiber_degree(const FamilySpec& spec, const FieldTower& tower) {
  const auto f = family_f(spec, tower);
  Rat v;
  if (spec.S2.empty()) v = newton_data(f).delta.normalized_volume() * Rat(factorial(spec.n));
  else v = upsilon(f, spec.S2);
  if (v.get_den() != 1) throw Error(Errc::Validation, "fiber degree is not an integer");
  return v.get_num().get_si();
}

RelativePolytope relative_polytope(const FamilySpec& spec, const FieldTower& tower, const std::vector<int>& drop) {
  if (spec.P_terms.empty() && drop.empty()) throw Error(Errc::EmptyDeformation, "P is zero");
  std::vector<bool> dropped(static_cast<std::size_t>(spec.s), false);
  for (int i : drop) {
    if (i < 0 || i >= spec.s) throw Error(Errc::Validation, "parameter index out of range");
    dropped[static_cast<std::size_t>(i)] = true;
  }
  const auto nd = newton_data(family_f(spec, tower));
  const std::size_t dim = static_cast<std::size_t>(spec.s) - drop.size();
  std::vector<QPoint> pts;
  for (const auto& t : spec.P_terms) {
    bool killed = false;
    for (int i = 0; i < spec.s; ++i)
      if (dropped[static_cast<std::size_t>(i)] && t.gamma[static_cast<std::size_t>(i)] != 0) killed = true;
    if (killed) continue;
    const auto w = nd.delta.weight(t.mu);
    if (!w) throw Error(Errc::NotInCone, "P exponent outside the cone of Delta");
    if (*w >= 1) throw Error(Errc::WeightOne, "P term has w(mu) = " + to_string(*w) + " >= 1");
    const Rat scale = Rat(1) / (Rat(1) - *w);
    QPoint q;
    for (int i = 0; i < spec.s; ++i)
      if (!dropped[static_cast<std::size_t>(i)]) q.push_back(Rat(scale * t.gamma[static_cast<std::size_t>(i)]));
    pts.push_back(q);
  }
  RelativePolytope r{RationalPolytope::build(pts, dim), 0, Rat(1), 1};
  r.s_tilde = r.gamma.span_dim();
  r.D = r.gamma.denominator();
  // a point has unit lattice volume in its zero-dimensional span
  r.volume = r.s_tilde == 0 ? Rat(1) : r.gamma.normalized_volume();
  return r;
}

std::optional<Rat> w_gamma_min(const RationalPolytope& P) {
  const std::size_t s = P.ambient_dim();
  if (s == 0) return Rat(0);
  ZPoint u0(s, 1);
  if (!P.in_cone(to_qpoint(u0))) {
    QVec sum(s, Rat(0));
    for (const auto& v : P.vertices())
      for (std::size_t i = 0; i < s; ++i) sum[i] += v[i];
    for (const auto& c : sum)
      if (c <= 0) return std::nullopt;
    const ZVec prim = linalg::primitive_integer(sum);
    for (std::size_t i = 0; i < s; ++i) u0[i] = prim[i].get_si();
  }
  const Rat c = *P.weight(u0);
  std::optional<Rat> best;
  for (const auto& lp : P.lattice_points_up_to_weight(c)) {
    if (!std::all_of(lp.u.begin(), lp.u.end(), [](long v) { return v >= 1; })) continue;
    if (!best || lp.weight < *best) best = lp.weight;
  }
  return best;
}

// ---------------------------------------------------------------- operations

std::string LinOp::to_string() const {
  switch (kind) {
    case Kind::Sym: return "Sym(" + std::to_string(k) + ")";
    case Kind::Ext: return "Ext(" + std::to_string(k) + ")";
    case Kind::TensorPow: return "TensorPow(" + std::to_string(k) + ")";
    case Kind::Prod: {
      std::string s = "Prod(";
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? ", " : "") + factors[i].to_string();
      return s + ")";
    }
  }
  return "";
}

namespace {

struct OpParser {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(Errc::Parse, "operation '" + s + "' at column " + std::to_string(i + 1) + ": " + msg);
  }
  void expect(char c) {
    ws();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  LinOp parse() {
    ws();
    std::size_t j = i;
    while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
    const std::string name = s.substr(i, j - i);
    i = j;
    expect('(');
    if (name == "Prod") {
      std::vector<LinOp> fs{parse()};
      ws();
      while (i < s.size() && s[i] == ',') {
        ++i;
        fs.push_back(parse());
        ws();
      }
      expect(')');
      return LinOp::prod(std::move(fs));
    }
    ws();
    std::size_t k = i;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == i) fail("expected a positive integer");
    const int v = std::stoi(s.substr(i, k - i));
    i = k;
    expect(')');
    if (v < 1) fail("argument must be at least 1");
    if (name == "Sym") return LinOp::sym(v);
    if (name == "Ext") return LinOp::ext(v);
    if (name == "TensorPow") return LinOp::tensor(v);
    fail("unknown operation '" + name + "'");
  }
};

}  // namespace

LinOp parse_linop(const std::string& text) {
  OpParser ps{text};
  LinOp op = ps.parse();
  ps.ws();
  if (ps.i != text.size()) ps.fail("trailing characters");
  return op;
}

LinOpDim lin_op_dim(const LinOp& op, long N) {
  switch (op.kind) {
    case LinOp::Kind::Sym: return {binomial(N + op.k - 1, op.k), op.k};
    case LinOp::Kind::Ext:
      if (op.k > N) throw Error(Errc::ExtTooLarge, "Ext(" + std::to_string(op.k) + ") with N = " + std::to_string(N));
      return {binomial(N, op.k), op.k};
    case LinOp::Kind::TensorPow: {
      Int d;
      mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(op.k));
      return {d, op.k};
    }
    case LinOp::Kind::Prod: {
      LinOpDim r{1, 0};
      for (const auto& f : op.factors) {
        const auto fd = lin_op_dim(f, N);
        r.dim *= fd.dim;
        r.order += fd.order;
      }
      return r;
    }
  }
  return {0, 0};
}

namespace {

// Nondecreasing index tuples of length k over {0..N-1}, lexicographic.
std::vector<std::vector<int>> multisets(int N, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = lo; i < N; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<int>> subsets(int N, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int i = lo; i < N; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

CycMat op_matrix(const CycMat& C, const LinOp& op, long p) {
  const int N = static_cast<int>(C.size());
  switch (op.kind) {
    case LinOp::Kind::Sym: {
      const auto basis = multisets(N, op.k);
      std::map<std::vector<int>, std::size_t> idx;
      for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
      CycMat M = cycmat::zero(basis.size(), basis.size(), p);
      for (std::size_t col = 0; col < basis.size(); ++col) {
        std::map<std::vector<int>, CycRat> acc{{{}, CycRat(p, 1)}};
        for (int j : basis[col]) {
          std::map<std::vector<int>, CycRat> next;
          for (const auto& [tup, c] : acc)
            for (int i = 0; i < N; ++i) {
              const auto& e = C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
              if (e.is_zero()) continue;
              auto t2 = tup;
              t2.insert(std::upper_bound(t2.begin(), t2.end(), i), i);
              auto it = next.find(t2);
              if (it == next.end()) next.emplace(t2, c * e);
              else it->second += c * e;
            }
          acc = std::move(next);
        }
        for (const auto& [tup, c] : acc) M[idx.at(tup)][col] = c;
      }
      return M;
    }
    case LinOp::Kind::Ext: {
      if (op.k > N) throw Error(Errc::ExtTooLarge, "Ext(" + std::to_string(op.k) + ") with N = " + std::to_string(N));
      const auto basis = subsets(N, op.k);
      CycMat M = cycmat::zero(basis.size(), basis.size(), p);
      for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) {
          CycMat sub = cycmat::zero(static_cast<std::size_t>(op.k), static_cast<std::size_t>(op.k), p);
          for (int i = 0; i < op.k; ++i)
            for (int j = 0; j < op.k; ++j)
              sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                  C[static_cast<std::size_t>(basis[r][static_cast<std::size_t>(i)])][static_cast<std::size_t>(basis[c][static_cast<std::size_t>(j)])];
          M[r][c] = cycmat::det(sub);
        }
      return M;
    }
    case LinOp::Kind::TensorPow: {
      CycMat M = C;
      for (int i = 1; i < op.k; ++i) M = cycmat::kron(M, C);
      return M;
    }
    case LinOp::Kind::Prod: {
      CycMat M = cycmat::identity(1, p);
      for (const auto& f : op.factors) M = cycmat::kron(M, op_matrix(C, f, p));
      return M;
    }
  }
  return {};
}

}  // namespace

std::vector<CycRat> local_factor_transform(const std::vector<CycRat>& P0, const LinOp& op, long N) {
  if (P0.empty()) throw Error(Errc::DegreeMismatch, "empty polynomial");
  const long p = P0[0].prime();
  CycPoly P = P0;
  poly::trim(P);
  if (poly::degree(P) != N)
    throw Error(Errc::DegreeMismatch, "local factor has degree " + std::to_string(poly::degree(P)) + ", expected " +
                                          std::to_string(N));
  if (!(P[0] == CycRat(p, 1))) throw Error(Errc::Validation, "local factor must have constant term 1");
  const auto dims = lin_op_dim(op, N);
  if (N == 0 || dims.dim == 0) return {CycRat(p, 1)};
  const CycMat C = cycmat::companion_of_reciprocal(P);
  const CycMat M = op_matrix(C, op, p);
  return cycmat::charpoly(M);
}

std::vector<CycRat> local_factor_transform(const std::vector<CycInt>& P, const LinOp& op, long N) {
  return local_factor_transform(std::vector<CycRat>(P.begin(), P.end()), op, N);
}

std::vector<Rat> basis_weights(const LinOp& op, const std::vector<Rat>& w) {
  const int N = static_cast<int>(w.size());
  std::vector<Rat> out;
  switch (op.kind) {
    case LinOp::Kind::Sym:
      for (const auto& m : multisets(N, op.k)) {
        Rat s = 0;
        for (int i : m) s += w[static_cast<std::size_t>(i)];
        out.push_back(s);
      }
      break;
    case LinOp::Kind::Ext:
      if (op.k > N) throw Error(Errc::ExtTooLarge, "Ext(" + std::to_string(op.k) + ") with N = " + std::to_string(N));
      for (const auto& m : subsets(N, op.k)) {
        Rat s = 0;
        for (int i : m) s += w[static_cast<std::size_t>(i)];
        out.push_back(s);
      }
      break;
    case LinOp::Kind::TensorPow: {
      out = {Rat(0)};
      for (int r = 0; r < op.k; ++r) {
        std::vector<Rat> next;
        for (const auto& a : out)
          for (const auto& b : w) next.push_back(Rat(a + b));
        out = std::move(next);
      }
      break;
    }
    case LinOp::Kind::Prod: {
      out = {Rat(0)};
      for (const auto& f : op.factors) {
        const auto fw = basis_weights(f, w);
        std::vector<Rat> next;
        for (const auto& a : out)
          for (const auto& b : fw) next.push_back(Rat(a + b));
        out = std::move(next);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- bounds

BoundValue pow2_bound(const Rat& C, const Rat& E, const Rat& F, long rho, std::string anchor, std::string formula) {
  if (C < 0) throw Error(Errc::Validation, "bound prefactor must be nonnegative");
  BoundValue b;
  b.anchor = std::move(anchor);
  b.formula = std::move(formula);
  if (E.get_den() == 1 && F.get_den() == 1) {
    Rat v = C * rat_pow2(E.get_num().get_si());
    const Rat base = Rat(1) + rat_pow2(F.get_num().get_si());
    for (long i = 0; i < rho; ++i) v *= base;
    b.exact = v;
    b.floor = floor_rat(v);
    b.approx = v.get_d();
    return b;
  }
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 4) {
    mpfr_t lo, hi, tl, th, fl, fh;
    for (auto* x : {&lo, &hi, &tl, &th, &fl, &fh}) mpfr_init2(*x, prec);
    mpfr_set_q(lo, C.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, C.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(tl, E.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(th, E.get_mpq_t(), MPFR_RNDU);
    mpfr_exp2(tl, tl, MPFR_RNDD);
    mpfr_exp2(th, th, MPFR_RNDU);
    mpfr_mul(lo, lo, tl, MPFR_RNDD);
    mpfr_mul(hi, hi, th, MPFR_RNDU);
    mpfr_set_q(fl, F.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(fh, F.get_mpq_t(), MPFR_RNDU);
    mpfr_exp2(fl, fl, MPFR_RNDD);
    mpfr_exp2(fh, fh, MPFR_RNDU);
    mpfr_add_ui(fl, fl, 1, MPFR_RNDD);
    mpfr_add_ui(fh, fh, 1, MPFR_RNDU);
    mpfr_pow_ui(fl, fl, static_cast<unsigned long>(rho), MPFR_RNDD);
    mpfr_pow_ui(fh, fh, static_cast<unsigned long>(rho), MPFR_RNDU);
    mpfr_mul(lo, lo, fl, MPFR_RNDD);
    mpfr_mul(hi, hi, fh, MPFR_RNDU);
    Int zl, zh;
    mpfr_get_z(zl.get_mpz_t(), lo, MPFR_RNDD);
    mpfr_get_z(zh.get_mpz_t(), hi, MPFR_RNDD);
    b.approx = mpfr_get_d(lo, MPFR_RNDN);
    for (auto* x : {&lo, &hi, &tl, &th, &fl, &fh}) mpfr_clear(*x);
    if (zl == zh) {
      b.floor = zl;
      return b;
    }
  }
  throw Error(Errc::Validation, "could not certify the floor of " + b.formula);
}

Theorem1Bounds bounds_theorem1(const RelativePolytope& G, int s, int n, const LinOpDim& op, long d) {
  const int st = G.s_tilde;
  if (st == 0) throw Error(Errc::EmptyDeformation, "Gamma is a point");
  Theorem1Bounds b;
  const Rat LN(op.dim);
  b.forced_equal = st < s;
  b.degree_lo = 0;
  b.degree_hi = b.forced_equal ? Rat(0) : Rat(Rat(factorial(s)) * G.volume * LN);
  b.degree_hi_floor = floor_rat(b.degree_hi);
  const Rat C = LN * Rat(factorial(st)) * G.volume;
  const Rat inv_st(1, st);
  const Rat E = Rat(st) + (Rat(1) + inv_st) * Rat(n * op.order);
  const Rat F = Rat(1) + inv_st;
  b.total = pow2_bound(C, E, F, s, "torus.total_degree",
                       "LN * s~! vol(Gamma) * 2^(s~ + (1 + 1/s~) n |L|) * (1 + 2^(1 + 1/s~))^s");
  if (d > 0) {
    // k = s + n|L| and rho = min(s, k) = s
    const Rat E2 = Rat(st) - Rat(1, st * d) + (Rat(1) + inv_st) * Rat(n * op.order);
    b.total_slight = pow2_bound(C, E2, F, s, "torus.total_degree_refined",
                                "LN * s~! vol(Gamma) * 2^(s~ - 1/(s~ d) + (1 + 1/s~)(k - rho)) * (1 + 2^(1 + 1/s~))^rho");
  }
  return b;
}

Theorem2Bounds bounds_theorem2(const FamilySpec& spec, const FieldTower& tower, const LinOp& op, long N,
                               const std::vector<Rat>& fiber_weights) {
  if (spec.base != SpaceKind::Affine) throw Error(Errc::Validation, "affine-base bounds need an affine base");
  Theorem2Bounds b;
  const auto G = relative_polytope(spec, tower);
  b.w_gamma = w_gamma_min(G.gamma);
  const auto dims = lin_op_dim(op, N);
  const Rat LN(dims.dim);
  Rat even = 0, odd = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << spec.s); ++mask) {
    GammaATerm t;
    for (int i = 0; i < spec.s; ++i)
      if (mask >> i & 1U) t.A.push_back(i);
    const auto GA = relative_polytope(spec, tower, t.A);
    t.s_tilde = GA.s_tilde;
    t.volume = GA.volume;
    t.weighted = Rat(factorial(spec.s - static_cast<long>(t.A.size()))) * GA.volume;
    (t.A.size() % 2 == 0 ? even : odd) += t.weighted;
    b.faces.push_back(std::move(t));
  }
  b.degree_lo = -LN * odd;
  b.degree_hi = LN * even;
  const int st = G.s_tilde;
  if (st == 0) throw Error(Errc::EmptyDeformation, "Gamma is a point");
  Int six_s = 1;
  for (int i = 0; i < spec.s; ++i) six_s *= 6;
  const Rat E = Rat(st) + (Rat(1) + Rat(1, st)) * Rat(spec.n * dims.order);
  b.total = pow2_bound(Rat(six_s) * LN * Rat(factorial(st)) * G.volume, E, Rat(0), 0, "affine.total_degree",
                       "2^(s~ + (1 + 1/s~) n |L|) * 6^s * LN * s~! vol(Gamma)");
  if (b.w_gamma) {
    const bool fully_affine = static_cast<int>(spec.S2.size()) == spec.n;
    if (fully_affine) {
      const auto f = family_f(spec, tower);
      const auto wd = w_gamma_min(newton_data(f).delta);
      const long Nt = fiber_degree(spec, tower);
      if (wd) b.affine_floor = *b.w_gamma + *wd * Rat(lin_op_dim(op, Nt).dim);
    }
    if (!fiber_weights.empty()) {
      const auto bw = basis_weights(op, fiber_weights);
      b.basis_floor = *b.w_gamma + bw.front();
    }
  }
  return b;
}

BoundProfile theorem1_profile(const std::vector<Rat>& basis_w, long p, int s, int n, int order) {
  BoundProfile prof;
  prof.bp1 = 1;
  prof.e = p - 1;
  prof.cols = basis_w;
  prof.k = s + n * order;
  return prof;
}

DworkBound dwork_np_lower_bound(const BoundProfile& prof, const RelativePolytope* G, int s, long extent,
                                long point_budget) {
  if (prof.bp1 <= 0) throw Error(Errc::Validation, "b(p-1) must be positive");
  if (prof.cols.empty()) throw Error(Errc::Validation, "empty column profile");
  for (const auto& c : prof.cols)
    if (c < 0) throw Error(Errc::Validation, "column weights must be nonnegative");
  const bool trivial = G == nullptr || G->s_tilde == 0;
  const long D = trivial ? 1 : G->D;
  Int dd = Rat(prof.bp1 / Rat(D)).get_den();
  for (const auto& c : prof.cols) dd = lcm_int(dd, c.get_den());
  DworkBound out;
  out.d = dd.get_si();
  if (prof.d > 0) {
    if (prof.d % out.d != 0)
      throw Error(Errc::Validation, "d = " + std::to_string(prof.d) + " is not a multiple of " + std::to_string(out.d));
    out.d = prof.d;
  }
  const long d = out.d;
  const auto dimB = static_cast<long>(prof.cols.size());

  // weights of M(Gamma), complete up to `reach`
  std::vector<Rat> ws;
  Rat reach;
  if (trivial) {
    ws = {Rat(0)};
    extent = std::min(extent, dimB);
  } else {
    Rat t = 1;
    for (;;) {
      const auto pts = G->gamma.lattice_points_up_to_weight(t);
      if (static_cast<long>(pts.size()) > point_budget)
        throw Error(Errc::UnboundedRequest, "polygon extent " + std::to_string(extent) + " needs more than " +
                                                std::to_string(point_budget) + " lattice points");
      ws.clear();
      for (const auto& lp : pts) ws.push_back(lp.weight);
      if (static_cast<long>(pts.size()) * dimB >= extent) break;
      t *= 2;
    }
    reach = t;
  }
  // W(j) for j/d <= b(p-1) * reach
  std::map<long, long> W;
  for (const auto& w : ws)
    for (const auto& c : prof.cols) {
      const Rat v = prof.bp1 * w + c;
      if (!trivial && v > prof.bp1 * reach) continue;
      const Rat j = v * Rat(d);
      if (j.get_den() != 1) throw Error(Errc::Validation, "W(j) value outside (1/d)Z");
      ++W[j.get_num().get_si()];
    }
  const long jmax = trivial ? (W.empty() ? 0 : W.rbegin()->first) : floor_rat(prof.bp1 * reach * Rat(d)).get_si();
  out.W.assign(static_cast<std::size_t>(jmax + 1), 0);
  for (const auto& [j, c] : W)
    if (j <= jmax) out.W[static_cast<std::size_t>(j)] = c;
  std::vector<std::pair<long, Rat>> pts{{0, Rat(0)}};
  long cx = 0;
  Rat cy = 0;
  for (long j = 0; j <= jmax; ++j) {
    const long wj = out.W[static_cast<std::size_t>(j)];
    if (wj == 0) continue;
    cx += wj;
    cy += Rat(j * wj, d);
    pts.emplace_back(cx, cy);
  }
  for (auto& pt : pts) pt.second.canonicalize();
  out.polygon = lower_hull(pts);
  Rat inv = Rat(1) / prof.bp1;
  Rat scale = 1;
  for (int i = 0; i < s; ++i) scale *= inv;
  out.degree_bound = scale * Rat(factorial(s)) * (trivial ? Rat(1) : G->volume) * Rat(dimB);
  if (!trivial && G->s_tilde >= 1) {
    const int st = G->s_tilde;
    const long rho = std::min<long>(s, prof.k);
    const Rat E = Rat(st) - Rat(1) / (Rat(st * d) * prof.bp1) + inv * (Rat(1) + Rat(1, st)) * Rat(prof.k - rho);
    const Rat F = inv * (Rat(1) + Rat(1, st));
    out.total_slight = pow2_bound(Rat(dimB) * Rat(factorial(st)) * G->volume, E, F, rho, "dwork.total_degree",
                                  "dim(B) s~! vol(Gamma) 2^(s~ - 1/(s~ d b(p-1)) + (1/b(p-1))(1 + 1/s~)(k - rho)) "
                                  "(1 + 2^((1/b(p-1))(1 + 1/s~)))^rho");
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inapplicable: return "Inapplicable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

QRelated q_related_check(const CycPoly& num, const CycPoly& den, const Int& q, int m_max) {
  QRelated r;
  CycPoly rem = den;
  poly::trim(rem);
  if (rem.empty()) throw Error(Errc::Validation, "zero denominator");
  const long p = rem[0].prime();
  Int qm = 1;
  for (int m = 1; m <= m_max && poly::degree(rem) > 0; ++m) {
    qm *= q;
    const CycPoly nq = poly::scale_variable(num, CycRat(p, Rat(qm)));
    const CycPoly g = poly::gcd(rem, nq);
    if (poly::degree(g) > 0) {
      r.matched.emplace_back(m, g);
      rem = poly::divmod(rem, g).first;
    }
  }
  r.unmatched = rem;
  r.verdict = poly::degree(rem) > 0 ? Verdict::Inconclusive : Verdict::Pass;
  return r;
}

}  // namespace toricfam
