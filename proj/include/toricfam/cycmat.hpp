#pragma once

// Dense matrices over Q(zeta_p).

#include <optional>
#include <vector>

#include "toricfam/arith.hpp"

namespace toricfam {

using CycMat = std::vector<std::vector<CycRat>>;

namespace cycmat {

CycMat zero(std::size_t rows, std::size_t cols, long p);
CycMat identity(std::size_t n, long p);
CycMat mul(const CycMat& a, const CycMat& b);
CycMat kron(const CycMat& a, const CycMat& b);
CycRat det(CycMat m);
/// Some solution of a x = b, or nullopt when inconsistent.
std::optional<std::vector<CycRat>> solve(CycMat a, std::vector<CycRat> b);
/// Coefficients [1, c_1, ..., c_n] of det(x I - m) leading first, which are
/// also the coefficients of det(1 - m T) in increasing powers of T.
std::vector<CycRat> charpoly(const CycMat& m);
/// Companion matrix whose eigenvalues are the reciprocal roots of
/// 1 + c_1 T + ... + c_N T^N.
CycMat companion_of_reciprocal(const std::vector<CycRat>& c);

}  // namespace cycmat

}  // namespace toricfam
