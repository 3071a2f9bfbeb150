#ifndef MONO_ALGEBRA_HPP
#define MONO_ALGEBRA_HPP

#include <cstdint>
#include <span>

#include "mono/transport.hpp"

namespace mono {

/// Quadratic relations B = sum c_ab t_a (x) t_b cutting the tensor algebra
/// on g generators. Each relation is a g x g coefficient matrix; the list
/// must be linearly independent. The Riemann-surface case is the empty list.
class RelationSet {
public:
  RelationSet(int generator_count, std::vector<Matrix> relations = {});
  int generator_count() const { return generator_count_; }
  const std::vector<Matrix>& relations() const { return relations_; }
  bool free() const { return relations_.empty(); }

private:
  int generator_count_;
  std::vector<Matrix> relations_;
};

/// Largest degree-n slice size g^n the quotient machinery will assemble.
inline constexpr std::int64_t kDefaultSliceCap = 4096;

/// Dimension of the degree-n graded piece of T(V)/(relations):
///   g^n - rank( sum_{a+b=n-2} V^a (x) R (x) V^b ).
std::int64_t graded_dimension(const RelationSet& relations, int degree,
                              std::int64_t slice_cap = kDefaultSliceCap);

/// Rewrites a series in the fixed monomial basis of each quotient slice
/// (first-in-lex surviving monomials); linear and exactly idempotent.
TensorSeries project(const TensorSeries& series, const RelationSet& relations,
                     std::int64_t slice_cap = kDefaultSliceCap);

/// An algebra morphism T(V)/(R) -> Mat_r given by the images of the
/// generators; valid iff the images kill every relation.
struct AlgebraHom {
  Eigen::Index target_rank;
  std::vector<Matrix> images;
  double residual;  ///< largest |sum c_ab e_a e_b| over the relations
};

/// Validates the images against the relations; throws RelationViolated when
/// some relation's image exceeds 1e-8.
AlgebraHom validate_hom(std::span<const Matrix> images,
                        const RelationSet& relations);

/// The connection form sum_i theta_i(z) e_i of the hom. With
/// left_multiplication the images act by left multiplication on Mat_r,
/// giving the r^2-dimensional representation.
RationalMatrixForm connection_from_hom(const AlgebraHom& hom,
                                       std::span<const RationalMatrixForm> theta,
                                       bool left_multiplication = false);

/// Applies the hom monomial-wise: sum over coefficients of
/// coeff * e_{i_1} ... e_{i_n}. The degree variant keeps one graded piece.
Matrix apply_hom(const TensorSeries& series, const AlgebraHom& hom);
Matrix apply_hom_degree(const TensorSeries& series, const AlgebraHom& hom,
                        int degree);

/// | f(J_{gamma,n}) - int_gamma phi_f^n |: the two sides are computed along
/// independent code paths (scalar Chen-Parshin stack vs matrix iterated
/// integral) and bound each other.
double verify_lemma_iterated(const AlgebraHom& hom,
                             std::span<const RationalMatrixForm> theta,
                             const Path& loop, int degree, double tol);

struct ChenParshinTail {
  Matrix partial_sum;  ///< sum_{n<=N} f(J_{gamma,n})
  Matrix reference;    ///< Mon_gamma applied to 1_R, via the transport ODE
  double residual;
};

/// Partial sums of the Chen-Parshin sequence against the ODE monodromy.
ChenParshinTail chen_parshin_limit(const AlgebraHom& hom,
                                   std::span<const RationalMatrixForm> theta,
                                   const Path& loop, int order, double tol);

}  // namespace mono

#endif
