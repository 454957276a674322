#pragma once

// Small dense linear algebra over Q and Z.

#include <vector>

#include "toricfam/arith.hpp"

namespace toricfam {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

namespace linalg {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);
std::size_t rank(QMat m);
/// Basis of {x : m x = 0}; `cols` is the number of columns (m may be empty).
QMat nullspace(QMat m, std::size_t cols);
Rat det(QMat m);
QMat inverse(const QMat& m);
QMat transpose(const QMat& m);
Rat dot(const QVec& a, const QVec& b);
/// Row vector times matrix.
QVec vec_mat(const QVec& v, const QMat& m);
/// Scale a rational vector to a primitive integer vector with the same direction.
ZVec primitive_integer(const QVec& v);
Int lcm_denominators(const QVec& v);

/// Unimodular U with U*K in row echelon form (zero rows last); returns U and the rank.
std::pair<ZMat, std::size_t> row_hermite(ZMat k);

}  // namespace linalg

}  // namespace toricfam
