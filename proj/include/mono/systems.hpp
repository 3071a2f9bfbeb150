#ifndef MONO_SYSTEMS_HPP
#define MONO_SYSTEMS_HPP

#include <array>
#include <span>
#include <vector>

#include "mono/transport.hpp"

namespace mono {

/// Exact rational number, reduced, positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational make_rational(long long num, long long den);

/// Residue eigenvalues +-g/(2(g+1)) of the equivariant logarithmic systems,
/// as exact rationals. Throws BadGenus for g < 2.
std::pair<Rational, Rational> residue_target(int g);

struct DimensionPair {
  long long character_variety;  ///< 2(g-1)d + 2gc
  long long systems;            ///< (g-1)(d+3) + gc
};

/// Dimension of the character variety and of the space of differential
/// systems, for genus g, commutator dimension d and abelian dimension c.
/// Precondition g >= 2, d >= 0, c >= 0.
DimensionPair dimension_formulas(long long g, long long d, long long c);

/// Ordered SL(2,C) generator matrices with a base-point record. Each
/// generator must be 2x2 with determinant 1 within 1e-8.
class MonodromyRep {
public:
  MonodromyRep(std::vector<Matrix> generators, Complex base_point = 0.0);
  const std::vector<Matrix>& generators() const { return generators_; }
  Complex base_point() const { return base_point_; }

private:
  std::vector<Matrix> generators_;
  Complex base_point_;
};

/// Monodromy representation of a form along generator loops sharing a base
/// point.
MonodromyRep monodromy_rep(const RationalMatrixForm& form,
                           std::span<const Path> loops, double tol);

/// Rank-2 logarithmic system on the 3- or 4-punctured sphere modeling a
/// genus-g surface. Residues must be traceless; with `equivariant` set, each
/// residue's eigenvalues must equal +-g/(2(g+1)) within 1e-9.
class LogarithmicSystem {
public:
  LogarithmicSystem(RationalMatrixForm form, int genus, bool equivariant);
  const RationalMatrixForm& form() const { return form_; }
  int genus() const { return genus_; }
  bool equivariant() const { return equivariant_; }

private:
  RationalMatrixForm form_;
  int genus_;
  bool equivariant_;
};

/// Family nabla + t * Psi of connections with a fixed Higgs direction.
struct HiggsFamily {
  RationalMatrixForm base;   ///< nabla
  RationalMatrixForm higgs;  ///< Psi

  HiggsFamily(RationalMatrixForm b, RationalMatrixForm h);
  RationalMatrixForm member(double t) const;
  /// Coefficient of dz^2 in det Psi at the point z.
  Complex det_higgs(Complex z) const;
};

struct TraceCoordinates {
  Complex x, y, z;                        ///< tr(M1 M2), tr(M2 M3), tr(M1 M3)
  std::array<Complex, 3> generator_traces;
  Complex triple_trace;                   ///< tr(M1 M2 M3)
};

/// The three pairwise-product traces plus the boundary traces of a rep with
/// exactly 3 generators.
TraceCoordinates trace_coordinates(const MonodromyRep& rep);

struct RealityReport {
  bool real;
  double max_imag;
  long words_checked;
};

/// Enumerates all reduced words up to the given length and reports the
/// largest |Im tr| found. Throws ExplosionGuard beyond 10^6 words.
RealityReport reality_check(const MonodromyRep& rep, int max_length, double tol);

/// Branch convention for the square root of the quadratic differential.
/// `determinant` takes sqrt(det Psi) literally; `eigenvalue` takes the
/// eigenvalue 1-form sqrt(-det Psi) of the traceless Higgs field, which is
/// what controls the large-t growth of the transport.
enum class SqrtConvention { determinant, eigenvalue };

struct WkbExponent {
  Complex value;
  bool admissible;
};

/// Integral of the continuously-tracked square root branch along the loop,
/// initialized so the real part of the integrand starts <= 0; admissible iff
/// it stays < 0 at every sample. Throws BranchPointOnPath where det Psi
/// vanishes on the loop. flip_branch negates the initialization choice
/// (which negates the value and spoils admissibility).
WkbExponent wkb_exponent(const RationalMatrixForm& higgs, const Path& loop,
                         double tol,
                         SqrtConvention convention = SqrtConvention::determinant,
                         bool flip_branch = false);

struct WkbRow {
  double t;
  Complex trace;       ///< tr P_gamma(nabla + t Psi)
  Complex normalized;  ///< trace * exp(t * exponent)
  double rel_change;   ///< |n_i - n_{i-1}| / |n_i|; NaN on the first row
};

struct WkbScanResult {
  std::vector<WkbRow> rows;
  Complex exponent;          ///< eigenvalue-branch integral used to normalize
  bool admissible;           ///< warning flag: false when the loop fails the
                             ///< admissibility inequality
  double final_rel_change;   ///< stabilization diagnostic of the last row
};

/// One transport per grid value of t, with the WKB-normalized trace and the
/// stabilization diagnostic. The t grid must be strictly increasing.
WkbScanResult wkb_scan(const HiggsFamily& family, const Path& loop,
                       std::span<const double> t_grid, double tol);

struct FinitenessReport {
  bool finite;    ///< false means "unknown", not "infinite"
  long order;     ///< group order when finite
  bool diverged;  ///< entry norms exceeded 10^6 during closure
};

/// Breadth-first closure of the generated group with tolerance-based
/// deduplication; reports the order when the closure stabilizes below cap.
FinitenessReport finiteness_probe(const MonodromyRep& rep, long cap, double tol);

}  // namespace mono

#endif
