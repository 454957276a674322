#pragma once

// Family L-functions: truncated Euler products over closed points of the
// base, the tensor-power moment oracle, rational reconstruction and the
// verification suite.

#include <optional>
#include <string>
#include <vector>

#include "toricfam/family.hpp"

namespace toricfam {

struct EulerSeries {
  CycPoly coeffs;  // c_0 .. c_M
  long N = 0;      // fiber degree
  long points = 0;
  /// Smallest guard verified by any fiber computation.
  int min_guard = 0;
};

/// prod over closed points lambda of degree <= M of Q_lambda(T^deg)^{-1}, where
/// Q_lambda = det(1 - op(Frob_lambda) T), truncated after T^M.
EulerSeries euler_series(const FamilySpec& spec, const FieldTower& tower, const LinOp& op, int M, int guard = -1,
                         int threads = 1);

/// exp(sum N_m T^m / m) with N_m = sum over lambda in the base over F_{q^m}
/// of ((-1)^n S_1(G_lambda))^k.
CycPoly moment_oracle(const FamilySpec& spec, const FieldTower& tower, int k, int M, int threads = 1);

/// exp(sum N_m T^m / m) with N_m = (-1)^n times the exponential sum of G over
/// the total space fiber x base over F_{q^m}.
CycPoly total_space_series(const FamilySpec& spec, const FieldTower& tower, int M, int threads = 1);

/// q^{m (n + s)} summed over m <= M.
double moment_cost(const FamilySpec& spec, const FieldTower& tower, int M);

struct RationalFn {
  CycPoly num;
  CycPoly den;
  long r_used = 0;  // orders of the solve window
  long s_used = 0;
  int verified_through = 0;
};

/// Smallest Num/Den (deg Num <= R_max, deg Den <= S_max) agreeing with the
/// series through T^M, found on windows with r + s <= M - guard.
RationalFn reconstruct(const CycPoly& series, long R_max, long S_max, int guard = 1);

/// Power series of num / den through T^M.
CycPoly series_of(const RationalFn& f, int M);

/// series^e for e = +-1 through the series length.
CycPoly series_power_sign(const CycPoly& series, int e);

struct CheckResult {
  std::string name;
  std::string anchor;
  Verdict verdict = Verdict::Pass;
  std::string witness;
  std::string detail;
};

struct VerifyInput {
  long p = 2;
  int a = 1;
  int s = 1;
  SpaceKind base = SpaceKind::Torus;
  /// Coefficients of L^{(-1)^{s+1}}.
  CycPoly series;
  std::optional<RationalFn> fn;
  std::optional<Rat> w_gamma;
  std::optional<Rat> degree_lo;
  std::optional<Rat> degree_hi;
  std::optional<Int> total_cap;
  int m_max = 8;
};

std::vector<CheckResult> verify(const VerifyInput& in);

}  // namespace toricfam
