#include "mono/holonomy.hpp"

#include <Eigen/SVD>

namespace mono {

namespace {

using Vector = Eigen::VectorXcd;

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix devectorize(const Vector& v, Eigen::Index n) {
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

/// Orthonormal basis of the row space of the stacked vectors, keeping
/// singular directions above tol_rank relative to the largest.
std::vector<Matrix> orthonormal_span(const std::vector<Matrix>& candidates,
                                     Eigen::Index n, double tol_rank) {
  if (candidates.empty()) return {};
  Matrix stacked(static_cast<Eigen::Index>(candidates.size()), n * n);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    stacked.row(static_cast<Eigen::Index>(i)) = vectorize(candidates[i]).transpose();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return {};
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol_rank * sv(0))
      basis.push_back(devectorize(svd.matrixV().col(i), n));
  return basis;
}

}  // namespace

LieGeneratorSet lie_generators(const RationalMatrixForm& form) {
  return LieGeneratorSet{form.coefficients(), form.rank()};
}

LieBasis lie_closure(const LieGeneratorSet& generators, double tol_rank) {
  if (generators.coefficients.empty())
    throw std::invalid_argument("lie closure needs a nonempty generator list");
  const Eigen::Index n = generators.ambient_rank;
  for (const Matrix& g : generators.coefficients)
    if (g.rows() != n || g.cols() != n)
      throw RankMismatch("generator size differs from the ambient rank");

  std::vector<Matrix> basis =
      orthonormal_span(generators.coefficients, n, tol_rank);
  for (Eigen::Index round = 0; round < n * n + 1; ++round) {
    std::vector<Matrix> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        candidates.push_back(basis[i] * basis[j] - basis[j] * basis[i]);
    std::vector<Matrix> next = orthonormal_span(candidates, n, tol_rank);
    if (next.size() == basis.size()) break;
    basis = std::move(next);
  }
  return LieBasis{std::move(basis), n};
}

double bracket_closure_residual(const LieBasis& basis) {
  double worst = 0;
  for (std::size_t i = 0; i < basis.elements.size(); ++i)
    for (std::size_t j = i + 1; j < basis.elements.size(); ++j) {
      const Matrix br = basis.elements[i] * basis.elements[j] -
                        basis.elements[j] * basis.elements[i];
      Matrix residual = br;
      for (const Matrix& b : basis.elements)
        residual -= (vectorize(b).dot(vectorize(br))) * b;
      worst = std::max(worst, cheb_norm(residual));
    }
  return worst;
}

bool reduction_check(const RationalMatrixForm& form, const LieBasis& basis,
                     double tol) {
  if (form.rank() != basis.ambient_rank)
    throw RankMismatch("form rank differs from the basis ambient rank");
  for (const Matrix& coeff : form.coefficients()) {
    Matrix residual = coeff;
    for (const Matrix& b : basis.elements)
      residual -= (vectorize(b).dot(vectorize(coeff))) * b;
    if (cheb_norm(residual) > tol) return false;
  }
  return true;
}

}  // namespace mono
