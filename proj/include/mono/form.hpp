#ifndef MONO_FORM_HPP
#define MONO_FORM_HPP

#include <span>
#include <vector>

#include "mono/numerics.hpp"

namespace mono {

/// A matrix-valued rational 1-form
///   A(z) dz = ( sum_k A_k/(z - p_k) + sum_j B_j z^j ) dz
/// with simple poles p_k and an optional polynomial part. Scalar forms are
/// the rank-1 case. Values are immutable after construction.
class RationalMatrixForm {
public:
  RationalMatrixForm(Eigen::Index rank, std::vector<Complex> poles,
                     std::vector<Matrix> residues,
                     std::vector<Matrix> polynomial = {});

  /// Scalar form sum_k c_k/(z - p_k) dz ( + polynomial part ).
  static RationalMatrixForm scalar(std::vector<Complex> poles,
                                   std::vector<Complex> residues,
                                   std::vector<Complex> polynomial = {});

  /// The zero form of the given rank.
  static RationalMatrixForm zero(Eigen::Index rank);

  Matrix evaluate(Complex z) const;

  Eigen::Index rank() const { return rank_; }
  const std::vector<Complex>& poles() const { return poles_; }
  const std::vector<Matrix>& residues() const { return residues_; }
  const std::vector<Matrix>& polynomial() const { return polynomial_; }

  /// All matrix coefficients (residues followed by polynomial coefficients).
  std::vector<Matrix> coefficients() const;

  bool all_residues_traceless(double tol = 1e-12) const;

  /// Trace of the form as a scalar rational 1-form.
  RationalMatrixForm trace_form() const;

  RationalMatrixForm scaled(Complex factor) const;

  friend RationalMatrixForm operator+(const RationalMatrixForm& a,
                                      const RationalMatrixForm& b);
  friend RationalMatrixForm operator*(Complex c, const RationalMatrixForm& f) {
    return f.scaled(c);
  }

private:
  Eigen::Index rank_;
  std::vector<Complex> poles_;
  std::vector<Matrix> residues_;
  std::vector<Matrix> polynomial_;
};

}  // namespace mono

#endif
