#ifndef MONO_HOLONOMY_HPP
#define MONO_HOLONOMY_HPP

#include <span>
#include <vector>

#include "mono/form.hpp"

namespace mono {

/// Matrix coefficients of D - D_0 in a chosen basis of forms; the generators
/// of the holonomy Lie algebra.
struct LieGeneratorSet {
  std::vector<Matrix> coefficients;
  Eigen::Index ambient_rank;
};

LieGeneratorSet lie_generators(const RationalMatrixForm& form);

/// Frobenius-orthonormal basis of a bracket-closed subspace of gl(n).
struct LieBasis {
  std::vector<Matrix> elements;
  Eigen::Index ambient_rank;
  int dimension() const { return static_cast<int>(elements.size()); }
};

/// Smallest bracket-closed subspace containing the span of the generators:
/// iterate span <- span + [span, span] with rank-revealing orthogonalization
/// (singular values below tol_rank relative to the largest are dropped).
LieBasis lie_closure(const LieGeneratorSet& generators, double tol_rank = 1e-9);

/// Largest residual of projecting any bracket of two basis elements back
/// onto the span; a closed basis keeps this below ~1e-8.
double bracket_closure_residual(const LieBasis& basis);

/// True iff every coefficient matrix of the form lies in span(basis) within
/// tol: the computable content of the connection preserving the minimal
/// reduction.
bool reduction_check(const RationalMatrixForm& form, const LieBasis& basis,
                     double tol);

}  // namespace mono

#endif
