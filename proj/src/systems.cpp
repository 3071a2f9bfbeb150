#include "mono/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mono {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return Rational{num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::pair<Rational, Rational> residue_target(int g) {
  if (g < 2) throw BadGenus(g);
  const Rational plus = make_rational(g, 2LL * (g + 1));
  return {plus, Rational{-plus.num, plus.den}};
}

DimensionPair dimension_formulas(long long g, long long d, long long c) {
  return DimensionPair{2 * (g - 1) * d + 2 * g * c, (g - 1) * (d + 3) + g * c};
}

MonodromyRep::MonodromyRep(std::vector<Matrix> generators, Complex base_point)
    : generators_(std::move(generators)), base_point_(base_point) {
  if (generators_.empty())
    throw InvalidRepresentation("representation needs at least one generator");
  for (const Matrix& m : generators_) {
    if (m.rows() != 2 || m.cols() != 2)
      throw InvalidRepresentation("generators must be 2x2");
    if (std::abs(m.determinant() - Complex(1, 0)) > 1e-8)
      throw InvalidRepresentation("generator determinant differs from 1");
  }
}

MonodromyRep monodromy_rep(const RationalMatrixForm& form,
                           std::span<const Path> loops, double tol) {
  if (loops.empty())
    throw InvalidRepresentation("need at least one generator loop");
  const Complex base = loops.front().start();
  std::vector<Matrix> gens;
  gens.reserve(loops.size());
  for (const Path& loop : loops) {
    if (std::abs(loop.start() - base) > 1e-9)
      throw BasePointMismatch("generator loops do not share a base point");
    gens.push_back(monodromy(form, loop, tol));
  }
  return MonodromyRep(std::move(gens), base);
}

LogarithmicSystem::LogarithmicSystem(RationalMatrixForm form, int genus,
                                     bool equivariant)
    : form_(std::move(form)), genus_(genus), equivariant_(equivariant) {
  if (genus_ < 2) throw BadGenus(genus_);
  if (form_.rank() != 2)
    throw InvalidForm("logarithmic system must have rank 2");
  const auto npoles = form_.poles().size();
  if (npoles != 3 && npoles != 4)
    throw InvalidForm("logarithmic system needs 3 or 4 poles");
  if (!form_.polynomial().empty())
    throw InvalidForm("logarithmic system must have no polynomial part");
  if (!form_.all_residues_traceless(1e-12))
    throw InvalidForm("logarithmic system residues must be traceless");
  if (equivariant_) {
    const double target = residue_target(genus_).first.value();
    for (const Matrix& r : form_.residues()) {
      // traceless 2x2: eigenvalues are +-sqrt(-det)
      const Complex lambda = std::sqrt(-r.determinant());
      if (std::min(std::abs(lambda - target), std::abs(lambda + target)) > 1e-9)
        throw InvalidForm("equivariant residue eigenvalues differ from the target");
    }
  }
}

HiggsFamily::HiggsFamily(RationalMatrixForm b, RationalMatrixForm h)
    : base(std::move(b)), higgs(std::move(h)) {
  if (base.rank() != higgs.rank())
    throw RankMismatch("base form and Higgs term must share rank");
}

RationalMatrixForm HiggsFamily::member(double t) const {
  return base + higgs.scaled(Complex(t, 0));
}

Complex HiggsFamily::det_higgs(Complex z) const {
  return higgs.evaluate(z).determinant();
}

TraceCoordinates trace_coordinates(const MonodromyRep& rep) {
  if (rep.generators().size() != 3)
    throw WrongGeneratorCount("trace coordinates need exactly 3 generators, got " +
                              std::to_string(rep.generators().size()));
  const Matrix& m1 = rep.generators()[0];
  const Matrix& m2 = rep.generators()[1];
  const Matrix& m3 = rep.generators()[2];
  TraceCoordinates tc;
  tc.x = (m1 * m2).trace();
  tc.y = (m2 * m3).trace();
  tc.z = (m1 * m3).trace();
  tc.generator_traces = {m1.trace(), m2.trace(), m3.trace()};
  tc.triple_trace = (m1 * m2 * m3).trace();
  return tc;
}

RealityReport reality_check(const MonodromyRep& rep, int max_length, double tol) {
  if (max_length < 1)
    throw std::invalid_argument("reality check needs max word length >= 1");
  const auto k = static_cast<long>(rep.generators().size());

  // count reduced words: sum_{l<=L} 2k (2k-1)^(l-1)
  double count = 0;
  double layer = 2.0 * static_cast<double>(k);
  for (int l = 1; l <= max_length; ++l) {
    count += layer;
    layer *= 2.0 * static_cast<double>(k) - 1.0;
    if (count > 1e6)
      throw ExplosionGuard("reduced word count exceeds 10^6 at length " +
                           std::to_string(l));
  }

  std::vector<Matrix> letters;
  letters.reserve(2 * static_cast<std::size_t>(k));
  for (const Matrix& m : rep.generators()) letters.push_back(m);
  for (const Matrix& m : rep.generators())
    letters.push_back(m.partialPivLu().inverse());
  auto inverse_of = [k](long letter) { return (letter + k) % (2 * k); };

  RealityReport report{true, 0.0, 0};
  struct Node {
    Matrix product;
    long last;
  };
  std::vector<Node> frontier;
  for (long a = 0; a < 2 * k; ++a) {
    frontier.push_back({letters[static_cast<std::size_t>(a)], a});
    report.max_imag = std::max(report.max_imag,
                               std::abs(frontier.back().product.trace().imag()));
    ++report.words_checked;
  }
  for (int l = 2; l <= max_length; ++l) {
    std::vector<Node> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(2 * k - 1));
    for (const Node& node : frontier)
      for (long a = 0; a < 2 * k; ++a) {
        if (a == inverse_of(node.last)) continue;
        Node child{node.product * letters[static_cast<std::size_t>(a)], a};
        report.max_imag =
            std::max(report.max_imag, std::abs(child.product.trace().imag()));
        ++report.words_checked;
        next.push_back(std::move(child));
      }
    frontier = std::move(next);
  }
  report.real = report.max_imag <= tol;
  return report;
}

namespace {

struct BranchTrack {
  std::vector<double> grid;     // parameters, including 0 and 1
  std::vector<Complex> values;  // continuous branch w(grid[j])
  std::vector<Complex> d;       // D(grid[j])
  bool admissible;
};

// Continuous square-root branch of D(s) = q(z(s)) z'(s)^2 along the path,
// refined until the argument of D rotates by less than pi/2 between
// neighboring samples (so the nearest-root continuation is unambiguous).
BranchTrack track_branch(const std::function<Complex(double)>& D,
                         const Path& path, bool flip) {
  const double min_abs = 1e-12;
  std::vector<double> grid;
  const long per_segment = 64;
  const long n0 = static_cast<long>(path.size()) * per_segment;
  grid.reserve(static_cast<std::size_t>(n0) + 1);
  for (long i = 0; i <= n0; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(n0));

  std::vector<Complex> dv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) dv[i] = D(grid[i]);

  for (int round = 0;; ++round) {
    for (const Complex& v : dv)
      if (std::abs(v) < min_abs) throw BranchPointOnPath();
    bool ok = true;
    std::vector<double> refined;
    std::vector<Complex> refined_d;
    refined.push_back(grid[0]);
    refined_d.push_back(dv[0]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (std::abs(std::arg(dv[i + 1] / dv[i])) > M_PI / 2) {
        ok = false;
        const double mid = 0.5 * (grid[i] + grid[i + 1]);
        refined.push_back(mid);
        refined_d.push_back(D(mid));
      }
      refined.push_back(grid[i + 1]);
      refined_d.push_back(dv[i + 1]);
    }
    if (ok) break;
    if (round >= 24 || grid.size() > (1u << 20)) throw BranchPointOnPath(
        "square-root branch cannot be tracked continuously along the path");
    grid = std::move(refined);
    dv = std::move(refined_d);
  }

  BranchTrack track;
  track.grid = std::move(grid);
  track.d = std::move(dv);
  track.values.resize(track.grid.size());
  Complex w = std::sqrt(track.d[0]);
  if (w.real() > 0) w = -w;
  if (flip) w = -w;
  track.values[0] = w;
  track.admissible = w.real() < 0;
  for (std::size_t i = 1; i < track.grid.size(); ++i) {
    const Complex r = std::sqrt(track.d[i]);
    w = std::abs(r - w) <= std::abs(-r - w) ? r : -r;
    track.values[i] = w;
    if (!(w.real() < 0)) track.admissible = false;
  }
  return track;
}

WkbExponent branch_integral(const RationalMatrixForm& higgs, const Path& loop,
                            double tol, SqrtConvention convention, bool flip) {
  if (!loop.closed()) throw NotClosed("WKB exponent requires a closed loop");
  if (higgs.rank() != 2)
    throw RankMismatch("WKB machinery expects a rank-2 Higgs term");
  const double sign = convention == SqrtConvention::determinant ? 1.0 : -1.0;
  auto D = [&](double s) -> Complex {
    const Complex z = loop.point(s);
    const Complex v = loop.velocity(s);
    return sign * higgs.evaluate(z).determinant() * v * v;
  };
  const BranchTrack track = track_branch(D, loop, flip);

  SampledFunction f;
  f.rows = f.cols = 1;
  f.breakpoints.assign(track.grid.begin() + 1, track.grid.end() - 1);
  f.eval = [D, track](double s) -> Matrix {
    auto it = std::upper_bound(track.grid.begin(), track.grid.end(), s);
    std::size_t j = it == track.grid.begin()
                        ? 0
                        : static_cast<std::size_t>(it - track.grid.begin()) - 1;
    if (j + 1 >= track.grid.size()) j = track.grid.size() - 2;
    // within one tracked interval the ratio stays off the cut, so the
    // principal square root of the ratio continues the branch
    return scalar_matrix(track.values[j] * std::sqrt(D(s) / track.d[j]));
  };
  return WkbExponent{quadrature(f, tol)(0, 0), track.admissible};
}

}  // namespace

WkbExponent wkb_exponent(const RationalMatrixForm& higgs, const Path& loop,
                         double tol, SqrtConvention convention,
                         bool flip_branch) {
  return branch_integral(higgs, loop, tol, convention, flip_branch);
}

WkbScanResult wkb_scan(const HiggsFamily& family, const Path& loop,
                       std::span<const double> t_grid, double tol) {
  if (!loop.closed()) throw NotClosed("WKB scan requires a closed loop");
  if (t_grid.empty()) throw std::invalid_argument("WKB scan needs a t grid");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i + 1]))
      throw std::invalid_argument("t grid must be strictly increasing");

  // Growth of the transport is governed by the eigenvalue 1-form of Psi,
  // so the normalizer integrates the eigenvalue branch. A structurally zero
  // Higgs term has no branch to track; its exponent is zero.
  bool higgs_zero = true;
  for (const Matrix& coeff : family.higgs.coefficients())
    if (cheb_norm(coeff) != 0.0) {
      higgs_zero = false;
      break;
    }
  const WkbExponent exponent =
      higgs_zero ? WkbExponent{Complex(0, 0), false}
                 : wkb_exponent(family.higgs, loop, tol, SqrtConvention::eigenvalue);

  WkbScanResult result;
  result.exponent = exponent.value;
  result.admissible = exponent.admissible;
  result.rows.reserve(t_grid.size());
  for (double t : t_grid) {
    const Matrix p = parallel_transport(family.member(t), loop, tol);
    const Complex tr = p.trace();
    const Complex normalized = tr * std::exp(t * exponent.value);
    double rel = std::numeric_limits<double>::quiet_NaN();
    if (!result.rows.empty()) {
      const Complex prev = result.rows.back().normalized;
      rel = std::abs(normalized - prev) / std::abs(normalized);
    }
    result.rows.push_back(WkbRow{t, tr, normalized, rel});
  }
  result.final_rel_change = result.rows.back().rel_change;
  return result;
}

FinitenessReport finiteness_probe(const MonodromyRep& rep, long cap, double tol) {
  if (cap < 1) throw std::invalid_argument("finiteness probe needs cap >= 1");
  const double divergence_norm = 1e6;

  std::vector<Matrix> elements;
  elements.push_back(Matrix::Identity(2, 2));
  std::vector<std::size_t> frontier = {0};

  auto find = [&elements, tol](const Matrix& m) -> bool {
    for (const Matrix& e : elements)
      if (cheb_norm(e - m) < tol) return true;
    return false;
  };

  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier)
      for (const Matrix& gen : rep.generators()) {
        const Matrix candidate = elements[idx] * gen;
        if (cheb_norm(candidate) > divergence_norm)
          return FinitenessReport{false, 0, true};
        if (find(candidate)) continue;
        if (static_cast<long>(elements.size()) >= cap)
          return FinitenessReport{false, 0, false};
        elements.push_back(candidate);
        next.push_back(elements.size() - 1);
      }
    frontier = std::move(next);
  }
  return FinitenessReport{true, static_cast<long>(elements.size()), false};
}

}  // namespace mono
