#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "mono/holonomy.hpp"
#include "mono/transport.hpp"

using namespace mono;

namespace {

Matrix e_matrix() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Matrix f_matrix() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, Eigen::Index n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, 1.0);
    if (std::abs(m.determinant()) > 0.1) return m;
  }
}

// ----- exact rational closure oracle (test-only) ---------------------------

struct Frac {
  long long num = 0, den = 1;
  Frac() = default;
  Frac(long long n, long long d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  bool zero() const { return num == 0; }
};

Frac operator+(Frac a, Frac b) { return Frac(a.num * b.den + b.num * a.den, a.den * b.den); }
Frac operator-(Frac a, Frac b) { return Frac(a.num * b.den - b.num * a.den, a.den * b.den); }
Frac operator*(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
Frac operator/(Frac a, Frac b) { return Frac(a.num * b.den, a.den * b.num); }

using FracVec = std::vector<Frac>;
using FracMat = std::vector<FracVec>;  // n x n rational matrix

FracMat multiply(const FracMat& a, const FracMat& b) {
  const std::size_t n = a.size();
  FracMat c(n, FracVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Frac s(0);
      for (std::size_t k = 0; k < n; ++k) s = s + a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

FracMat bracket(const FracMat& a, const FracMat& b) {
  const std::size_t n = a.size();
  FracMat ab = multiply(a, b), ba = multiply(b, a);
  FracMat c(n, FracVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = ab[i][j] - ba[i][j];
  return c;
}

FracVec flatten(const FracMat& m) {
  FracVec v;
  for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
  return v;
}

/// Reduced basis over Q; insert returns true when the vector was new.
struct ExactSpan {
  std::vector<FracVec> rows;  // echelon rows
  std::vector<std::size_t> pivots;

  bool insert(FracVec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t p = pivots[r];
      if (!v[p].zero()) {
        const Frac factor = v[p] / rows[r][p];
        for (std::size_t j = 0; j < v.size(); ++j)
          v[j] = v[j] - factor * rows[r][j];
      }
    }
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].zero()) {
        rows.push_back(std::move(v));
        pivots.push_back(j);
        return true;
      }
    return false;
  }
};

int exact_closure_dimension(std::vector<FracMat> gens) {
  ExactSpan span;
  std::vector<FracMat> members;
  for (const auto& g : gens)
    if (span.insert(flatten(g))) members.push_back(g);
  for (;;) {
    std::vector<FracMat> fresh;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        FracMat br = bracket(members[i], members[j]);
        if (span.insert(flatten(br))) fresh.push_back(std::move(br));
      }
    if (fresh.empty()) break;
    members.insert(members.end(), fresh.begin(), fresh.end());
  }
  return static_cast<int>(span.rows.size());
}

}  // namespace

TEST_CASE("lie closure dimensions") {
  SUBCASE("a single diagonalizable matrix is abelian") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = Complex(1.4, 0.3);
    d(1, 1) = Complex(-0.7, 1.1);
    const LieBasis basis = lie_closure({{d}, 2});
    CHECK(basis.dimension() == 1);
  }
  SUBCASE("E and F generate sl2") {
    const LieBasis basis = lie_closure({{e_matrix(), f_matrix()}, 2});
    CHECK(basis.dimension() == 3);
    CHECK(bracket_closure_residual(basis) < 1e-8);
  }
  SUBCASE("the identity spans a closed line") {
    const LieBasis basis = lie_closure({{Matrix::Identity(3, 3)}, 3});
    CHECK(basis.dimension() == 1);
    CHECK(bracket_closure_residual(basis) == 0.0);
  }
  SUBCASE("generic pairs fill gl(n)") {
    std::mt19937_64 rng(3);
    const LieBasis basis =
        lie_closure({{random_matrix(rng, 3, 1.0), random_matrix(rng, 3, 1.0)}, 3});
    CHECK(basis.dimension() == 9);
  }
}

TEST_CASE("lie closure bases are orthonormal") {
  std::mt19937_64 rng(5);
  const LieBasis basis =
      lie_closure({{random_matrix(rng, 2, 1.0), random_matrix(rng, 2, 1.0)}, 2});
  for (std::size_t i = 0; i < basis.elements.size(); ++i)
    for (std::size_t j = 0; j < basis.elements.size(); ++j) {
      const Complex ip =
          (basis.elements[i].adjoint() * basis.elements[j]).trace();
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("lie closure is idempotent") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 3);
    std::vector<Matrix> gens;
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) gens.push_back(random_matrix(rng, n, 0.8));
    const LieBasis once = lie_closure({gens, n});
    const LieBasis twice = lie_closure({once.elements, n});
    CHECK(once.dimension() == twice.dimension());
  }
}

TEST_CASE("lie closure dimension is conjugation equivariant") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 3);
    std::vector<Matrix> gens, conj;
    const Matrix g = random_invertible(rng, n);
    const Matrix gi = g.partialPivLu().inverse();
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      gens.push_back(random_matrix(rng, n, 0.8));
      conj.push_back(g * gens.back() * gi);
    }
    CHECK(lie_closure({gens, n}).dimension() ==
          lie_closure({conj, n}).dimension());
  }
}

TEST_CASE("small closures match the exact rational oracle") {
  const FracMat E = {{Frac(0), Frac(1)}, {Frac(0), Frac(0)}};
  const FracMat F = {{Frac(0), Frac(0)}, {Frac(1), Frac(0)}};
  const FracMat H = {{Frac(1), Frac(0)}, {Frac(0), Frac(-1)}};
  const FracMat D12 = {{Frac(1), Frac(0)}, {Frac(0), Frac(2)}};

  CHECK(exact_closure_dimension({E, F}) == 3);
  CHECK(lie_closure({{e_matrix(), f_matrix()}, 2}).dimension() == 3);

  CHECK(exact_closure_dimension({D12}) == 1);

  // [E, H] = -2E stays in the span
  CHECK(exact_closure_dimension({E, H}) == 2);
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  CHECK(lie_closure({{e_matrix(), h}, 2}).dimension() == 2);

  // Heisenberg: [E12, E23] = E13, everything further vanishes
  FracMat E12(3, FracVec(3)), E23(3, FracVec(3));
  E12[0][1] = Frac(1);
  E23[1][2] = Frac(1);
  CHECK(exact_closure_dimension({E12, E23}) == 3);
  Matrix e12 = Matrix::Zero(3, 3), e23 = Matrix::Zero(3, 3);
  e12(0, 1) = 1;
  e23(1, 2) = 1;
  CHECK(lie_closure({{e12, e23}, 3}).dimension() == 3);
}

TEST_CASE("reduction check") {
  SUBCASE("a form lies in its own closure") {
    std::mt19937_64 rng(13);
    const RationalMatrixForm form(
        2, {Complex(0, 0), Complex(1, 0)},
        {random_matrix(rng, 2, 0.5), random_matrix(rng, 2, 0.5)});
    const LieBasis basis = lie_closure(lie_generators(form));
    CHECK(reduction_check(form, basis, 1e-9));
  }
  SUBCASE("a too-small span is rejected") {
    const RationalMatrixForm form(2, {Complex(0, 0), Complex(1, 0)},
                                  {e_matrix(), f_matrix()});
    const LieBasis small = lie_closure({{e_matrix()}, 2});
    CHECK(small.dimension() == 1);
    CHECK_FALSE(reduction_check(form, small, 1e-9));
  }
  SUBCASE("the zero form needs no basis") {
    const LieBasis empty{{}, 2};
    CHECK(reduction_check(RationalMatrixForm::zero(2), empty, 1e-9));
  }
  SUBCASE("ambient rank mismatch is rejected") {
    const LieBasis basis = lie_closure({{e_matrix()}, 2});
    CHECK_THROWS_AS(reduction_check(RationalMatrixForm::zero(3), basis, 1e-9),
                    RankMismatch);
  }
}

TEST_CASE("strictly triangular coefficients give triangular monodromy") {
  // the computable shadow of the minimal-reduction statement
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 3; ++rep) {
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    Matrix r0 = Matrix::Zero(2, 2), r1 = Matrix::Zero(2, 2);
    r0(0, 1) = Complex(u(rng), u(rng));
    r1(0, 1) = Complex(u(rng), u(rng));
    const RationalMatrixForm form(2, {Complex(0, 0), Complex(1.5, 0)}, {r0, r1});

    const LieBasis basis = lie_closure(lie_generators(form));
    CHECK(basis.dimension() <= 1);

    for (const Path& loop :
         {circle(0.0, 0.5), circle(Complex(1.5, 0), 0.5), circle(0.7, 1.4)}) {
      const Matrix m = monodromy(form, loop, 1e-10);
      CHECK(std::abs(m(1, 0)) <= 1e-7);
      CHECK(std::abs(m(0, 0) - 1.0) <= 1e-7);
      CHECK(std::abs(m(1, 1) - 1.0) <= 1e-7);
    }
  }
}
