#include "mono/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mono {

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1,1] (QUADPACK dqk15 constants).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

Matrix sample(const SampledFunction& f, double s) {
  Matrix v = f.eval(s);
  if (!v.allFinite()) throw NonFiniteSample();
  return v;
}

struct Panel {
  double a, b;
  Matrix integral;
  double error;
};

// Gauss-Kronrod 15 on [a,b]; error estimate is the Chebyshev norm of the
// difference against the embedded 7-point Gauss rule.
Panel gk15(const SampledFunction& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Matrix resk = Matrix::Zero(f.rows, f.cols);
  Matrix resg = Matrix::Zero(f.rows, f.cols);

  const Matrix fc = sample(f, c);
  resk += kKronrodWeights[7] * fc;
  resg += kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const Matrix f1 = sample(f, c - h * kKronrodNodes[j]);
    const Matrix f2 = sample(f, c + h * kKronrodNodes[j]);
    resk += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
  }
  resk *= h;
  resg *= h;
  return Panel{a, b, resk, cheb_norm(resk - resg)};
}

std::vector<double> piece_boundaries(std::span<const double> breakpoints,
                                     double a, double b) {
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double t : breakpoints)
    if (t > a && t < b) cuts.push_back(t);
  cuts.push_back(b);
  return cuts;
}

}  // namespace

Matrix quadrature(const SampledFunction& f, double a, double b, double tol,
                  const QuadratureOptions& opts) {
  if (tol <= 0) throw ToleranceNotMet("quadrature tolerance must be positive");
  if (a == b) return Matrix::Zero(f.rows, f.cols);

  const auto cuts = piece_boundaries(f.breakpoints, a, b);
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    panels.push_back(gk15(f, cuts[i], cuts[i + 1]));

  // Max-heap of panel indices by error estimate; split the worst panel until
  // the summed estimate meets tol.
  auto worse = [&panels](std::size_t i, std::size_t j) {
    return panels[i].error < panels[j].error;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)>
      heap(worse);
  double total_error = 0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total_error += panels[i].error;
    heap.push(i);
  }

  while (total_error > tol) {
    if (static_cast<int>(panels.size()) >= opts.max_panels)
      throw ToleranceNotMet("quadrature panel cap reached before tolerance");
    const std::size_t i = heap.top();
    heap.pop();
    const double mid = 0.5 * (panels[i].a + panels[i].b);
    if (mid <= panels[i].a || mid >= panels[i].b)
      throw ToleranceNotMet("quadrature panel width underflow");
    Panel left = gk15(f, panels[i].a, mid);
    Panel right = gk15(f, mid, panels[i].b);
    total_error += left.error + right.error - panels[i].error;
    panels[i] = std::move(left);
    heap.push(i);
    panels.push_back(std::move(right));
    heap.push(panels.size() - 1);
  }

  // Deterministic summation order.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  Matrix result = Matrix::Zero(f.rows, f.cols);
  for (const Panel& p : panels) result += p.integral;
  return result;
}

Matrix quadrature(const SampledFunction& f, double tol,
                  const QuadratureOptions& opts) {
  return quadrature(f, 0.0, 1.0, tol, opts);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// Difference between the 5th and the embedded 4th order weights.
constexpr double kE[7] = {71.0 / 57600,      0.0,         -71.0 / 16695,
                          71.0 / 1920,       -17253.0 / 339200,
                          22.0 / 525,        -1.0 / 40};

double scaled_error(const Matrix& err, const Matrix& y0, const Matrix& y1,
                    double tol) {
  double worst = 0;
  for (Eigen::Index j = 0; j < err.cols(); ++j)
    for (Eigen::Index i = 0; i < err.rows(); ++i) {
      const double sc =
          tol + tol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
      worst = std::max(worst, std::abs(err(i, j)) / sc);
    }
  return worst;
}

}  // namespace

Matrix ode_solve(const std::function<Matrix(double, const Matrix&)>& rhs,
                 Matrix y0, std::span<const double> breakpoints, double a,
                 double b, double tol, const OdeOptions& opts) {
  if (tol <= 0) throw ToleranceNotMet("ode tolerance must be positive");
  if (a == b) return y0;

  const auto cuts = piece_boundaries(breakpoints, a, b);
  const double h_floor =
      64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, b - a);

  Matrix y = std::move(y0);
  std::array<Matrix, 7> k;
  long steps = 0;
  double fac_old = 1e-4;

  auto eval = [&](double s, const Matrix& state, double lo, double hi) {
    // Keep samples strictly inside the current smooth piece so the
    // evaluator never sees a breakpoint from the wrong side.
    const double nudge = 1e-13 * (hi - lo);
    Matrix d = rhs(std::clamp(s, lo, hi - nudge), state);
    if (!d.allFinite()) throw NonFiniteSample("ode right-hand side not finite");
    return d;
  };

  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double lo = cuts[piece], hi = cuts[piece + 1];
    double t = lo;
    k[0] = eval(t, y, lo, hi);
    double h = std::min(hi - lo, 0.01 * (1.0 + cheb_norm(y)) /
                                     std::max(cheb_norm(k[0]), 1e-8));
    bool fsal_valid = true;

    while (t < hi) {
      if (++steps > opts.max_steps)
        throw ToleranceNotMet("ode step cap reached before end of interval");
      h = std::min(h, hi - t);
      if (h < h_floor)
        throw StepUnderflow("ode step size fell below the machine floor at s=" +
                            std::to_string(t));
      if (!fsal_valid) {
        k[0] = eval(t, y, lo, hi);
        fsal_valid = true;
      }
      for (int i = 1; i < 7; ++i) {
        Matrix yi = y;
        for (int j = 0; j < i; ++j)
          if (kA[i][j] != 0.0) yi += (h * kA[i][j]) * k[j];
        k[i] = eval(t + kC[i] * h, yi, lo, hi);
      }
      Matrix y_new = y;
      for (int j = 0; j < 6; ++j)
        if (kA[6][j] != 0.0) y_new += (h * kA[6][j]) * k[j];
      Matrix err = Matrix::Zero(y.rows(), y.cols());
      for (int j = 0; j < 7; ++j)
        if (kE[j] != 0.0) err += (h * kE[j]) * k[j];

      const double err_norm = scaled_error(err, y, y_new, tol);
      if (err_norm <= 1.0) {
        t += h;
        y = std::move(y_new);
        k[0] = k[6];  // FSAL
        const double fac11 = std::pow(std::max(err_norm, 1e-16), 0.17);
        double fac = fac11 / std::pow(fac_old, 0.04);
        fac = std::max(0.1, std::min(5.0, fac / 0.9));
        h /= fac;
        fac_old = std::max(err_norm, 1e-4);
      } else {
        const double fac11 = std::pow(err_norm, 0.17);
        h /= std::min(10.0, fac11 / 0.9);
        fsal_valid = false;
      }
    }
    fac_old = 1e-4;
  }
  return y;
}

Matrix ode_transport(const SampledFunction& A, double tol,
                     const OdeOptions& opts) {
  if (A.rows != A.cols)
    throw RankMismatch("transport needs a square coefficient matrix");
  const Eigen::Index n = A.rows;
  auto rhs = [&A](double s, const Matrix& y) -> Matrix { return -A.eval(s) * y; };
  return ode_solve(rhs, Matrix::Identity(n, n), A.breakpoints, 0.0, 1.0, tol,
                   opts);
}

}  // namespace mono
