#pragma once

// Exact rational dense linear algebra on top of Eigen. Rank, solving and kernel
// computation use exact elimination; there is no pivot-magnitude heuristics to
// get wrong because arithmetic never rounds.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <vector>

#include "gptlab/rational.hpp"

namespace gptlab {

using QVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

QVec qvec_zero(Eigen::Index n);
QVec qvec_from(std::initializer_list<long> entries);
QVec qvec_from_rats(const std::vector<Rat>& entries);

// Exact rank by fraction-free (Bareiss) elimination on a denominator-cleared copy.
int exact_rank(QMat m);

// Basis of the nullspace {x : m x = 0}; columns of the result.
QMat kernel_basis(const QMat& m);

// Solves m x = rhs exactly. Returns nullopt when inconsistent. When the system is
// underdetermined, free variables are set to zero (deterministic).
std::optional<QVec> solve_linear(QMat m, QVec rhs);

// Indices of a maximal linearly independent subset of the columns, scanned in order.
std::vector<int> independent_columns(const QMat& m);

// Left inverse (UᵀU)⁻¹Uᵀ of a full-column-rank matrix.
QMat left_pseudo_inverse(const QMat& u);

// Scales a rational vector by a positive rational so entries become coprime
// integers. Zero vectors pass through.
QVec primitive(const QVec& v);

// primitive() followed by a sign flip making the first nonzero entry positive.
// Canonical form for vectors defined only up to a nonzero scalar.
QVec primitive_signed(const QVec& v);

bool lex_less(const QVec& a, const QVec& b);

bool is_affinely_independent(const std::vector<QVec>& points);

}  // namespace gptlab
