#include "mono/transport.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

namespace {

void scan_pole_distance(const RationalMatrixForm& form, const Path& path,
                        double pole_guard) {
  // Coarse upfront scan so a path that plainly crosses a pole fails before
  // any expensive work. The per-sample check in the pullback evaluator is
  // the authoritative guard.
  const int samples_per_segment = 128;
  const auto n = static_cast<int>(path.size()) * samples_per_segment;
  for (int i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    const Complex z = path.point(s);
    for (std::size_t k = 0; k < form.poles().size(); ++k)
      if (std::abs(z - form.poles()[k]) < pole_guard)
        throw PoleTooClose(static_cast<int>(k), s);
  }
}

}  // namespace

SampledFunction pullback(const RationalMatrixForm& form, const Path& path,
                         double pole_guard) {
  scan_pole_distance(form, path, pole_guard);
  SampledFunction f;
  f.rows = form.rank();
  f.cols = form.rank();
  f.breakpoints = path.breakpoints();
  f.eval = [form, path, pole_guard](double s) -> Matrix {
    const Complex z = path.point(s);
    for (std::size_t k = 0; k < form.poles().size(); ++k)
      if (std::abs(z - form.poles()[k]) < pole_guard)
        throw PoleTooClose(static_cast<int>(k), s);
    return form.evaluate(z) * path.velocity(s);
  };
  return f;
}

Matrix parallel_transport(const RationalMatrixForm& form, const Path& path,
                          double tol) {
  return ode_transport(pullback(form, path), tol);
}

Matrix monodromy(const RationalMatrixForm& form, const Path& loop, double tol) {
  if (!loop.closed()) throw NotClosed("monodromy requires a closed loop");
  return parallel_transport(form, loop.reversed(), tol);
}

Path word_path(std::span<const Path> base_loops, const LoopWord& word) {
  if (word.letters.empty())
    throw std::invalid_argument("cannot realize the empty word as a path");
  std::vector<Segment> segs;
  for (auto [gen, exp] : word.letters) {
    if (gen < 0 || gen >= static_cast<int>(base_loops.size()))
      throw std::invalid_argument("word references an unknown generator");
    if (exp != 1 && exp != -1)
      throw std::invalid_argument("word exponents must be +1 or -1");
    const Path piece = exp == 1 ? base_loops[gen] : base_loops[gen].reversed();
    for (std::size_t i = 0; i < piece.size(); ++i) segs.push_back(piece.segment(i));
  }
  return Path(std::move(segs));
}

Representation representation(const RationalMatrixForm& form,
                              std::span<const Path> base_loops,
                              std::span<const LoopWord> words, double tol,
                              bool verify_with_paths) {
  if (base_loops.empty())
    throw std::invalid_argument("representation needs at least one base loop");
  const Complex base = base_loops.front().start();
  for (const Path& loop : base_loops) {
    if (!loop.closed()) throw NotClosed("all base loops must be closed");
    if (std::abs(loop.start() - base) > 1e-9)
      throw BasePointMismatch("base loops do not share a base point");
  }

  Representation rep;
  rep.generators.reserve(base_loops.size());
  for (const Path& loop : base_loops)
    rep.generators.push_back(monodromy(form, loop, tol));

  std::vector<Matrix> inverses(base_loops.size());
  for (std::size_t i = 0; i < base_loops.size(); ++i)
    inverses[i] = rep.generators[i].partialPivLu().inverse();

  for (const LoopWord& w : words) {
    const Eigen::Index n = form.rank();
    Matrix value = Matrix::Identity(n, n);
    for (auto [gen, exp] : w.letters) {
      if (gen < 0 || gen >= static_cast<int>(base_loops.size()))
        throw std::invalid_argument("word references an unknown generator");
      value = value * (exp == 1 ? rep.generators[gen] : inverses[gen]);
    }
    rep.word_values.push_back(value);
    if (verify_with_paths && !w.letters.empty()) {
      const Matrix direct = monodromy(form, word_path(base_loops, w), tol);
      const double r = cheb_norm(direct - value);
      rep.word_residuals.push_back(r);
      rep.max_residual = std::max(rep.max_residual, r);
    } else {
      rep.word_residuals.push_back(0.0);
    }
  }
  return rep;
}

Matrix iterated_integral(std::span<const RationalMatrixForm> forms,
                         const Path& path, double tol) {
  if (forms.empty())
    throw std::invalid_argument("iterated integral needs at least one form");
  const Eigen::Index n = forms.front().rank();
  for (const RationalMatrixForm& f : forms)
    if (f.rank() != n)
      throw RankMismatch("iterated integral requires forms of equal rank");
  const auto m = static_cast<Eigen::Index>(forms.size());

  std::vector<SampledFunction> fs;
  fs.reserve(forms.size());
  for (const RationalMatrixForm& f : forms) fs.push_back(pullback(f, path));

  // Stacked state: blocks G_1..G_m, each n x n, all starting at zero.
  auto rhs = [&fs, n, m](double s, const Matrix& y) -> Matrix {
    Matrix d(m * n, n);
    Matrix f_prev = fs[0].eval(s);
    d.topRows(n) = f_prev;
    for (Eigen::Index i = 1; i < m; ++i) {
      const Matrix fi = fs[static_cast<std::size_t>(i)].eval(s);
      d.middleRows(i * n, n) = y.middleRows((i - 1) * n, n) * fi;
    }
    return d;
  };
  const Matrix y = ode_solve(rhs, Matrix::Zero(m * n, n), path.breakpoints(),
                             0.0, 1.0, tol);
  return y.bottomRows(n);
}

Matrix monodromy_series(const RationalMatrixForm& form, const Path& loop,
                        int order, double tol) {
  if (!loop.closed()) throw NotClosed("monodromy series requires a closed loop");
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  const Eigen::Index n = form.rank();
  if (order == 0) return Matrix::Identity(n, n);

  const SampledFunction a = pullback(form, loop);
  const Eigen::Index m = order;
  auto rhs = [&a, n, m](double s, const Matrix& y) -> Matrix {
    const Matrix f = a.eval(s);
    Matrix d(m * n, n);
    d.topRows(n) = f;
    for (Eigen::Index i = 1; i < m; ++i)
      d.middleRows(i * n, n) = y.middleRows((i - 1) * n, n) * f;
    return d;
  };
  const Matrix y = ode_solve(rhs, Matrix::Zero(m * n, n), loop.breakpoints(),
                             0.0, 1.0, tol);
  Matrix sum = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < m; ++i) sum += y.middleRows(i * n, n);
  return sum;
}

TensorSeries::TensorSeries(int generator_count, int order)
    : generator_count_(generator_count), order_(order) {
  if (generator_count_ < 1)
    throw std::invalid_argument("tensor series needs at least one generator");
  if (order_ < 0) throw std::invalid_argument("tensor series order must be >= 0");
}

Complex TensorSeries::coefficient(const std::vector<int>& index) const {
  const auto it = coefficients_.find(index);
  return it == coefficients_.end() ? Complex(0, 0) : it->second;
}

void TensorSeries::set_coefficient(std::vector<int> index, Complex value) {
  if (static_cast<int>(index.size()) > order_)
    throw TruncationTooLarge("coefficient degree exceeds the series order");
  for (int i : index)
    if (i < 0 || i >= generator_count_)
      throw std::invalid_argument("multi-index entry out of range");
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw std::invalid_argument("tensor series coefficients must be finite");
  if (value == Complex(0, 0))
    coefficients_.erase(index);
  else
    coefficients_[std::move(index)] = value;
}

TensorSeries concat_product(const TensorSeries& a, const TensorSeries& b,
                            int order_cap) {
  if (a.generator_count() != b.generator_count())
    throw CountMismatch("tensor series over different alphabets");
  TensorSeries out(a.generator_count(), order_cap);
  for (const auto& [ia, ca] : a.coefficients())
    for (const auto& [ib, cb] : b.coefficients()) {
      if (static_cast<int>(ia.size() + ib.size()) > order_cap) continue;
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      const Complex before = out.coefficient(idx);
      out.set_coefficient(std::move(idx), before + ca * cb);
    }
  return out;
}

TensorSeries chen_parshin(std::span<const RationalMatrixForm> theta,
                          const Path& loop, int order, double tol,
                          long coefficient_cap) {
  if (!loop.closed())
    throw NotClosed("Chen-Parshin coefficients are defined for closed loops");
  if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
  if (theta.empty())
    throw std::invalid_argument("Chen-Parshin needs a form basis");
  const auto g = static_cast<long>(theta.size());
  for (const RationalMatrixForm& f : theta)
    if (f.rank() != 1)
      throw RankMismatch("Chen-Parshin basis forms must be scalar");

  // Word count sum_{n<=order} g^n; the cap guards g^order.
  double gpow = 1;
  long total = 1;
  for (int n = 1; n <= order; ++n) {
    gpow *= static_cast<double>(g);
    if (gpow > static_cast<double>(coefficient_cap))
      throw TruncationTooLarge("g^order exceeds the coefficient cap");
    total += static_cast<long>(gpow);
  }

  TensorSeries series(static_cast<int>(g), order);
  series.set_coefficient({}, Complex(1, 0));
  if (order == 0) return series;

  // Slot layout: degree-n words in lexicographic order, degrees stacked in
  // increasing order; slot 0 is the empty word.
  std::vector<long> degree_offset(order + 1);
  degree_offset[0] = 0;
  long acc = 1, pw = 1;
  for (int n = 1; n <= order; ++n) {
    degree_offset[n] = acc;
    pw *= g;
    acc += pw;
  }

  // prefix[k] and last letter for every slot k >= 1.
  std::vector<long> prefix(total);
  std::vector<int> last(total);
  {
    long k = 1;
    pw = 1;
    for (int n = 1; n <= order; ++n) {
      pw *= g;
      for (long w = 0; w < pw; ++w, ++k) {
        last[k] = static_cast<int>(w % g);
        prefix[k] = n == 1 ? 0 : degree_offset[n - 1] + w / g;
      }
    }
  }

  std::vector<SampledFunction> fs;
  fs.reserve(theta.size());
  for (const RationalMatrixForm& f : theta) fs.push_back(pullback(f, loop));

  auto rhs = [&](double s, const Matrix& y) -> Matrix {
    std::vector<Complex> fvals(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) fvals[i] = fs[i].eval(s)(0, 0);
    Matrix d = Matrix::Zero(total, 1);
    for (long k = 1; k < total; ++k)
      d(k, 0) = y(prefix[k], 0) * fvals[static_cast<std::size_t>(last[k])];
    return d;
  };
  Matrix y0 = Matrix::Zero(total, 1);
  y0(0, 0) = 1.0;
  const Matrix y = ode_solve(rhs, std::move(y0), loop.breakpoints(), 0.0, 1.0, tol);

  // Unpack: digits of w in base g, most significant digit first.
  long k = 1;
  pw = 1;
  for (int n = 1; n <= order; ++n) {
    pw *= g;
    for (long w = 0; w < pw; ++w, ++k) {
      std::vector<int> idx(n);
      long v = w;
      for (int d = n - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(v % g);
        v /= g;
      }
      series.set_coefficient(std::move(idx), y(k, 0));
    }
  }
  return series;
}

}  // namespace mono
