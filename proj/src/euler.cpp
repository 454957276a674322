#include "toricfam/euler.hpp"

#include <algorithm>
#include <cmath>

#include "toricfam/cycmat.hpp"
#include "toricfam/error.hpp"

namespace toricfam {

namespace {

std::string lambda_text(const ClosedPoint& pt) {
  std::string s = "deg " + std::to_string(pt.degree) + " (";
  for (std::size_t i = 0; i < pt.coords.size(); ++i) s += (i ? ", " : "") + std::to_string(pt.coords[i]);
  return s + ")";
}

PointSpace total_space(const FamilySpec& spec) {
  PointSpace sp = spec.fiber_space();
  for (int i = 0; i < spec.s; ++i) sp.affine.push_back(spec.base == SpaceKind::Affine);
  return sp;
}

CycRat sign_n(const FamilySpec& spec, const CycInt& x) { return CycRat(spec.n % 2 == 0 ? x : -x); }

}  // namespace

EulerSeries euler_series(const FamilySpec& spec, const FieldTower& tower, const LinOp& op, int M, int guard,
                         int threads) {
  if (M < 0) throw Error(Errc::Validation, "truncation order must be nonnegative");
  if (spec.s < 1) throw Error(Errc::Validation, "the family needs at least one parameter");
  const long p = tower.p();
  EulerSeries out;
  out.N = fiber_degree(spec, tower);
  out.min_guard = guard < 0 ? std::max<int>(3, static_cast<int>(out.N)) : guard;
  const auto space = spec.fiber_space();
  CycPoly denom = poly::one(p);
  const std::size_t terms = static_cast<std::size_t>(M) + 1;
  if (M == 0) {
    out.coeffs = denom;
    return out;
  }
  const auto pts = closed_points(tower, spec.base, spec.s, M);
  for (const auto& level : pts)
    for (const auto& pt : level) {
      const auto g = fiber_poly(spec, tower, pt.degree, pt.coords);
      LPolynomial P;
      try {
        P = fiber_lpoly(g, tower, space, static_cast<int>(out.N), guard, threads);
      } catch (const Error& e) {
        if (e.code() == Errc::DegreeViolation || e.code() == Errc::NonIntegralCoefficient)
          throw Error(Errc::FiberDegenerate, "fiber at " + lambda_text(pt) + ": " + e.what());
        throw;
      }
      out.min_guard = std::min(out.min_guard, P.guard);
      const auto Q = local_factor_transform(P.coeffs, op, out.N);
      CycPoly sub(terms, CycRat(p));
      for (std::size_t i = 0; i < Q.size(); ++i) {
        const std::size_t e = i * static_cast<std::size_t>(pt.degree);
        if (e >= terms) break;
        sub[e] = Q[i];
      }
      denom = poly::mul_trunc(denom, sub, terms);
      ++out.points;
    }
  out.coeffs = poly::inverse_series(denom, terms);
  return out;
}

double moment_cost(const FamilySpec& spec, const FieldTower& tower, int M) {
  double c = 0;
  for (int m = 1; m <= M; ++m) c += std::pow(static_cast<double>(tower.q()), m * (spec.n + spec.s));
  return c;
}

CycPoly moment_oracle(const FamilySpec& spec, const FieldTower& tower, int k, int M, int threads) {
  if (k < 1) throw Error(Errc::Validation, "moment order must be positive");
  const long p = tower.p();
  const auto space = spec.fiber_space();
  std::vector<CycRat> sums;
  for (int m = 1; m <= M; ++m) {
    const int lvl = spec.a * m;
    if (!tower.feasible(lvl)) throw Error(Errc::BudgetExceeded, "F_{q^" + std::to_string(m) + "} is beyond the table cap");
    const FieldLevel& L = tower.level(lvl);
    const Elem lo = spec.base == SpaceKind::Affine ? 0 : 1;
    std::vector<Elem> lambda(static_cast<std::size_t>(spec.s), lo);
    CycRat Nm(p);
    for (;;) {
      const auto g = fiber_poly(spec, tower, m, lambda);
      const CycRat t = sign_n(spec, exp_sum(g, tower, 1, space, threads));
      CycRat tk = t;
      for (int i = 1; i < k; ++i) tk *= t;
      Nm += tk;
      std::size_t i = 0;
      while (i < lambda.size() && lambda[i] == L.size() - 1) lambda[i++] = lo;
      if (i == lambda.size()) break;
      ++lambda[i];
    }
    sums.push_back(Nm);
  }
  return poly::exp_log_series(sums, static_cast<std::size_t>(M) + 1, p);
}

CycPoly total_space_series(const FamilySpec& spec, const FieldTower& tower, int M, int threads) {
  const long p = tower.p();
  const auto G = total_poly(spec, tower);
  const auto sp = total_space(spec);
  std::vector<CycRat> sums;
  for (int m = 1; m <= M; ++m) sums.push_back(sign_n(spec, exp_sum(G, tower, m, sp, threads)));
  return poly::exp_log_series(sums, static_cast<std::size_t>(M) + 1, p);
}

CycPoly series_of(const RationalFn& f, int M) {
  const std::size_t terms = static_cast<std::size_t>(M) + 1;
  return poly::mul_trunc(f.num, poly::inverse_series(f.den, terms), terms);
}

CycPoly series_power_sign(const CycPoly& series, int e) {
  if (e > 0) return series;
  return poly::inverse_series(series, series.size());
}

RationalFn reconstruct(const CycPoly& series, long R_max, long S_max, int guard) {
  if (series.empty()) throw Error(Errc::Validation, "empty series");
  const long p = series[0].prime();
  const long M = static_cast<long>(series.size()) - 1;
  const long budget = M - guard;
  auto c = [&](long j) { return j < 0 ? CycRat(p) : series[static_cast<std::size_t>(j)]; };
  for (long D = 0; D <= std::min(budget, R_max + S_max); ++D)
    for (long s = std::max(0L, D - R_max); s <= std::min(D, S_max); ++s) {
      const long r = D - s;
      // den_1..den_s from sum_i den_i c_{j-i} = 0 for j = r+1 .. r+s
      CycMat A(static_cast<std::size_t>(s), std::vector<CycRat>(static_cast<std::size_t>(s), CycRat(p)));
      std::vector<CycRat> b(static_cast<std::size_t>(s), CycRat(p));
      for (long row = 0; row < s; ++row) {
        const long j = r + 1 + row;
        b[static_cast<std::size_t>(row)] = -c(j);
        for (long i = 1; i <= s; ++i) A[static_cast<std::size_t>(row)][static_cast<std::size_t>(i - 1)] = c(j - i);
      }
      const auto x = cycmat::solve(A, b);
      if (!x) continue;
      RationalFn f;
      f.den = poly::one(p);
      f.den.insert(f.den.end(), x->begin(), x->end());
      poly::trim(f.den);
      const CycPoly prod = poly::mul_trunc(f.den, series, static_cast<std::size_t>(M) + 1);
      bool ok = true;
      for (long j = r + 1; j <= M && ok; ++j) ok = prod[static_cast<std::size_t>(j)].is_zero();
      if (!ok) continue;
      f.num.assign(prod.begin(), prod.begin() + r + 1);
      poly::trim(f.num);
      const CycPoly g = poly::gcd(f.num, f.den);
      if (poly::degree(g) > 0) {
        f.num = poly::divmod(f.num, g).first;
        f.den = poly::divmod(f.den, g).first;
      }
      const CycRat d0 = f.den[0].inverse();
      for (auto& v : f.num) v *= d0;
      for (auto& v : f.den) v *= d0;
      f.r_used = r;
      f.s_used = s;
      f.verified_through = static_cast<int>(M);
      return f;
    }
  if (R_max + S_max > budget)
    throw Error(Errc::Unverified, "no candidate with r + s <= " + std::to_string(budget) +
                                      " matches the series; larger windows need more coefficients");
  throw Error(Errc::NoSolution, "no rational function within the caps matches the series");
}

namespace {

CheckResult make_check(std::string name, std::string anchor) {
  CheckResult c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  return c;
}

}  // namespace

std::vector<CheckResult> verify(const VerifyInput& in) {
  std::vector<CheckResult> out;
  const bool affine = in.base == SpaceKind::Affine;
  const auto q = [&] {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(in.p), static_cast<unsigned long>(in.a));
    return v;
  }();

  auto div = make_check("divisibility", "affine.divisibility");
  if (!affine || !in.w_gamma) {
    div.verdict = Verdict::Inapplicable;
    div.detail = affine ? "w(Gamma) undefined" : "torus base";
  } else {
    div.detail = "ord_q(c_j) >= " + to_string(*in.w_gamma) + " j";
    for (std::size_t j = 1; j < in.series.size(); ++j) {
      const auto v = ord_p(in.series[j], in.a).ord_q();
      if (v && *v < *in.w_gamma * Rat(static_cast<long>(j))) {
        div.verdict = Verdict::Fail;
        div.witness = "j = " + std::to_string(j) + ", ord_q = " + to_string(*v);
        break;
      }
    }
  }
  out.push_back(div);

  auto win = make_check("degree_window", affine ? "affine.degree_window" : "torus.degree_window");
  auto tot = make_check("total_degree", affine ? "affine.total_degree" : "torus.total_degree");
  auto qr = make_check("q_related", "q_related");
  auto np = make_check("newton_slopes", "affine.divisibility");
  if (!in.fn) {
    for (auto* c : {&win, &tot, &qr, &np}) {
      c->verdict = Verdict::Inapplicable;
      c->detail = "no reconstruction";
    }
  } else {
    const long R = poly::degree(in.fn->num), S = poly::degree(in.fn->den);
    const Rat diff(R - S);
    if (!in.degree_lo || !in.degree_hi) {
      win.verdict = Verdict::Inapplicable;
    } else {
      win.detail = "R - S = " + std::to_string(R - S) + " in [" + to_string(*in.degree_lo) + ", " +
                   to_string(*in.degree_hi) + "]";
      if (diff < *in.degree_lo || diff > *in.degree_hi) {
        win.verdict = Verdict::Fail;
        win.witness = "R = " + std::to_string(R) + ", S = " + std::to_string(S);
      }
    }
    if (!in.total_cap) {
      tot.verdict = Verdict::Inapplicable;
    } else {
      tot.detail = "R + S = " + std::to_string(R + S) + " <= " + in.total_cap->get_str();
      if (Int(R + S) > *in.total_cap) {
        tot.verdict = Verdict::Fail;
        tot.witness = "R = " + std::to_string(R) + ", S = " + std::to_string(S);
      }
    }
    const auto rel = q_related_check(in.fn->num, in.fn->den, q, in.m_max);
    qr.verdict = rel.verdict;
    qr.detail = std::to_string(rel.matched.size()) + " matched factors, unmatched degree " +
                std::to_string(poly::degree(rel.unmatched));
    if (affine && qr.verdict != Verdict::Pass) qr.verdict = Verdict::Inapplicable;
    if (!affine || !in.w_gamma) {
      np.verdict = Verdict::Inapplicable;
    } else {
      np.detail = "slopes >= " + to_string(*in.w_gamma);
      for (const auto* side : {&in.fn->num, &in.fn->den}) {
        const auto sl = newton_polygon(*side, in.a, 1).slopes();
        if (!sl.empty() && sl.front() < *in.w_gamma) {
          np.verdict = Verdict::Fail;
          np.witness = std::string(side == &in.fn->num ? "Num" : "Den") + " slope " + to_string(sl.front());
          break;
        }
      }
    }
  }
  out.push_back(win);
  out.push_back(tot);
  out.push_back(qr);
  out.push_back(np);
  return out;
}

}  // namespace toricfam
