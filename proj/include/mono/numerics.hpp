#ifndef MONO_NUMERICS_HPP
#define MONO_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "mono/errors.hpp"

namespace mono {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Entrywise max absolute value (Chebyshev norm). The error metric used
/// throughout the library.
inline double cheb_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix scalar_matrix(Complex value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return m;
}

/// A piecewise-smooth map [0,1] -> C^{rows x cols}. Breakpoints are the
/// interior parameters where smoothness may fail; they are strictly
/// increasing and lie in (0,1). Scalar functions use 1x1 matrices.
struct SampledFunction {
  std::function<Matrix(double)> eval;
  std::vector<double> breakpoints;
  Eigen::Index rows = 1;
  Eigen::Index cols = 1;
};

struct QuadratureOptions {
  int max_panels = 1 << 20;
};

struct OdeOptions {
  long max_steps = 10'000'000;
};

/// Integral of f over [0,1], each smooth piece integrated separately with
/// adaptive Gauss-Kronrod refinement until the estimated absolute error is
/// below tol per entry.
Matrix quadrature(const SampledFunction& f, double tol,
                  const QuadratureOptions& opts = {});

/// Same, over the subinterval [a,b] of the parameter domain.
Matrix quadrature(const SampledFunction& f, double a, double b, double tol,
                  const QuadratureOptions& opts = {});

/// Adaptive embedded Runge-Kutta 5(4) driver for Y'(s) = rhs(s, Y) on [a,b]
/// with PI step-size control. Breakpoints inside (a,b) are honored as hard
/// step boundaries so the right-hand side is only sampled on smooth pieces.
Matrix ode_solve(const std::function<Matrix(double, const Matrix&)>& rhs,
                 Matrix y0, std::span<const double> breakpoints, double a,
                 double b, double tol, const OdeOptions& opts = {});

/// Fundamental solution at s=1 of the transport equation
///   Y'(s) = -A(s) Y(s),  Y(0) = I.
Matrix ode_transport(const SampledFunction& A, double tol,
                     const OdeOptions& opts = {});

}  // namespace mono

#endif
