#include <cmath>
#include <complex>

#include "doctest.h"
#include "mono/numerics.hpp"

using namespace mono;

namespace {

SampledFunction matrix_fn(std::function<Matrix(double)> f, Eigen::Index rows,
                          Eigen::Index cols, std::vector<double> breaks = {}) {
  SampledFunction g;
  g.eval = std::move(f);
  g.rows = rows;
  g.cols = cols;
  g.breakpoints = std::move(breaks);
  return g;
}

SampledFunction scalar_fn(std::function<Complex(double)> f,
                          std::vector<double> breaks = {}) {
  return matrix_fn([f = std::move(f)](double s) { return scalar_matrix(f(s)); },
                   1, 1, std::move(breaks));
}

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

TEST_CASE("quadrature of the zero integrand") {
  auto f = matrix_fn([](double) { return Matrix::Zero(2, 2); }, 2, 2);
  CHECK(cheb_norm(quadrature(f, 1e-10)) == 0.0);
}

TEST_CASE("quadrature of s*I") {
  auto f = matrix_fn([](double s) { return Matrix(s * Matrix::Identity(2, 2)); },
                     2, 2);
  const Matrix q = quadrature(f, 1e-10);
  CHECK(cheb_norm(q - 0.5 * Matrix::Identity(2, 2)) <= 1e-10);
}

TEST_CASE("quadrature of a full oscillation is zero") {
  auto f = scalar_fn(
      [](double s) { return std::exp(Complex(0, kTwoPi * s)); });
  CHECK(std::abs(quadrature(f, 1e-10)(0, 0)) <= 1e-10);
}

TEST_CASE("quadrature splits panels at breakpoints") {
  // |s - 0.3| has a kink; exact integral (0.09 + 0.49)/2.
  auto f = scalar_fn([](double s) { return Complex(std::abs(s - 0.3), 0); },
                     {0.3});
  CHECK(std::abs(quadrature(f, 1e-12)(0, 0) - 0.29) <= 1e-12);
}

TEST_CASE("quadrature is linear") {
  const double tol = 1e-10;
  auto f = scalar_fn([](double s) { return std::exp(Complex(0, kTwoPi * s)); });
  auto g = scalar_fn([](double s) { return Complex(1.0 / (1.0 + s), s * s); });
  const Complex alpha(0.7, -0.2), beta(-1.3, 0.45);
  auto combo = scalar_fn([&](double s) {
    return alpha * std::exp(Complex(0, kTwoPi * s)) +
           beta * Complex(1.0 / (1.0 + s), s * s);
  });
  const Complex lhs = quadrature(combo, tol)(0, 0);
  const Complex rhs = alpha * quadrature(f, tol)(0, 0) + beta * quadrature(g, tol)(0, 0);
  CHECK(std::abs(lhs - rhs) <= 10 * tol);
}

TEST_CASE("quadrature reports non-finite samples") {
  auto f = scalar_fn([](double s) {
    return s > 0.5 ? Complex(std::nan(""), 0) : Complex(1, 0);
  });
  CHECK_THROWS_AS(quadrature(f, 1e-10), NonFiniteSample);
}

TEST_CASE("quadrature reports an unreachable tolerance") {
  // Sharp spike that the panel cap cannot resolve.
  auto f = scalar_fn([](double s) {
    return Complex(1.0 / (1e-13 + std::abs(s - 1.0 / 3.0)), 0);
  });
  QuadratureOptions opts;
  opts.max_panels = 64;
  CHECK_THROWS_AS(quadrature(f, 1e-12, opts), ToleranceNotMet);
}

TEST_CASE("transport of the zero connection is the identity") {
  auto a = matrix_fn([](double) { return Matrix::Zero(3, 3); }, 3, 3);
  CHECK(cheb_norm(ode_transport(a, 1e-10) - Matrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("transport of a constant scalar matrix is exp(-c)") {
  const Complex c(0.8, -1.1);
  auto a = matrix_fn([c](double) { return Matrix(c * Matrix::Identity(2, 2)); },
                     2, 2);
  const Matrix y = ode_transport(a, 1e-10);
  CHECK(cheb_norm(y - std::exp(-c) * Matrix::Identity(2, 2)) <= 1e-9);
}

TEST_CASE("transport of the abelian circle pullback") {
  // (a/z) dz along the unit circle pulls back to the constant 2*pi*i*a.
  const Complex a(1.0 / 3.0, 0.0);
  auto f = matrix_fn(
      [a](double) { return scalar_matrix(Complex(0, kTwoPi) * a); }, 1, 1);
  const Complex y = ode_transport(f, 1e-10)(0, 0);
  const Complex expected = std::exp(-Complex(0, kTwoPi) * a);
  CHECK(std::abs(y - expected) <= 1e-9);
}

TEST_CASE("transport composes over a split point") {
  const double tol = 1e-10;
  auto coeff = [](double s) {
    Matrix m(2, 2);
    m << Complex(std::sin(kTwoPi * s), 0.2), Complex(0.5, -0.1),
        Complex(0.3, 0.4), Complex(-std::cos(kTwoPi * s), 0);
    return m;
  };
  auto a = matrix_fn(coeff, 2, 2);
  auto rhs = [&](double s, const Matrix& y) -> Matrix { return -coeff(s) * y; };
  const Matrix whole = ode_transport(a, tol);
  for (double c : {0.25, 0.5, 0.8}) {
    const Matrix first =
        ode_solve(rhs, Matrix::Identity(2, 2), {}, 0.0, c, tol);
    const Matrix second =
        ode_solve(rhs, Matrix::Identity(2, 2), {}, c, 1.0, tol);
    CHECK(cheb_norm(whole - second * first) <= 10 * tol);
  }
}

TEST_CASE("halving the tolerance does not worsen the transport") {
  auto coeff = [](double s) {
    Matrix m(2, 2);
    m << Complex(std::sin(kTwoPi * s), 0.0), Complex(0.9, 0.2),
        Complex(-0.4, 0.6), Complex(0, std::cos(kTwoPi * s));
    return m;
  };
  double prev = -1.0;
  for (double tol : {1e-4, 5e-5, 2.5e-5, 1.25e-5}) {
    auto a = matrix_fn(coeff, 2, 2);
    const Matrix y = ode_transport(a, tol);
    const Matrix ref = ode_transport(a, tol / 10.0);
    const double disc = cheb_norm(y - ref);
    if (prev >= 0) CHECK(disc <= prev + 1e-13);
    prev = disc;
  }
}

TEST_CASE("transport reports step underflow near a singular coefficient") {
  // A near-singularity pinned at a breakpoint, as produced by a path that
  // grazes a pole at a segment junction.
  auto a = scalar_fn(
      [](double s) { return Complex(0, 1.0 / (std::abs(s - 0.5) + 1e-16)); },
      {0.5});
  CHECK_THROWS_AS(ode_transport(a, 1e-10), StepUnderflow);
}

TEST_CASE("transport reports non-finite right-hand sides") {
  auto a = scalar_fn([](double s) {
    return s > 0.7 ? Complex(std::numeric_limits<double>::infinity(), 0)
                   : Complex(0.1, 0);
  });
  CHECK_THROWS_AS(ode_transport(a, 1e-10), NonFiniteSample);
}
