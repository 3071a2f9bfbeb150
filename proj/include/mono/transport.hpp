#ifndef MONO_TRANSPORT_HPP
#define MONO_TRANSPORT_HPP

#include <map>
#include <span>
#include <vector>

#include "mono/form.hpp"
#include "mono/path.hpp"

namespace mono {

/// Default guard radius: paths must keep this distance from every pole.
inline constexpr double kDefaultPoleGuard = 1e-6;

/// Pullback s |-> A(z(s)) * z'(s) of a form along a path, with the path's
/// breakpoints recorded. Throws PoleTooClose if the path enters the guard
/// radius of a pole (checked at every sample and by an upfront scan).
SampledFunction pullback(const RationalMatrixForm& form, const Path& path,
                         double pole_guard = kDefaultPoleGuard);

/// Parallel transport along the path: the fundamental solution at s=1 of
/// Y' = -A(s) Y with A the pullback of the form.
Matrix parallel_transport(const RationalMatrixForm& form, const Path& path,
                          double tol);

/// Monodromy of the loop: parallel transport along the orientation-reversed
/// loop (the composition convention "gamma1 then gamma2" forces this).
Matrix monodromy(const RationalMatrixForm& form, const Path& loop, double tol);

/// A word in the generators of the fundamental group: pairs of
/// (generator index, exponent +-1).
struct LoopWord {
  std::vector<std::pair<int, int>> letters;
};

/// The concatenated path realizing a word in the given base loops.
Path word_path(std::span<const Path> base_loops, const LoopWord& word);

struct Representation {
  std::vector<Matrix> generators;    ///< monodromy per base loop
  std::vector<Matrix> word_values;   ///< ordered products per word
  std::vector<double> word_residuals;///< |Mon(path(w)) - product|, when checked
  double max_residual = 0.0;
};

/// Monodromy matrices of the base loops plus the evaluation of each word as
/// the ordered product of generator monodromies. With verify_with_paths the
/// word is also transported as one concatenated path and the homomorphism
/// residual is reported.
Representation representation(const RationalMatrixForm& form,
                              std::span<const Path> base_loops,
                              std::span<const LoopWord> words, double tol,
                              bool verify_with_paths = true);

/// Chen iterated integral int_path rho_1 ... rho_m, computed by one pass of
/// the coupled triangular system G_1' = F_1, G_{i+1}' = G_i F_{i+1}.
Matrix iterated_integral(std::span<const RationalMatrixForm> forms,
                         const Path& path, double tol);

/// Partial sum I + sum_{n<=N} int_loop omega^n of the monodromy series.
Matrix monodromy_series(const RationalMatrixForm& form, const Path& loop,
                        int order, double tol);

/// Truncated element of the tensor algebra on a g-letter alphabet: a sparse
/// map from multi-indices (0-based) to coefficients. The empty index is the
/// unit in degree 0.
class TensorSeries {
public:
  struct DegreeLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  using CoefficientMap = std::map<std::vector<int>, Complex, DegreeLex>;

  TensorSeries(int generator_count, int order);

  int generator_count() const { return generator_count_; }
  int order() const { return order_; }

  Complex coefficient(const std::vector<int>& index) const;
  void set_coefficient(std::vector<int> index, Complex value);
  const CoefficientMap& coefficients() const { return coefficients_; }

private:
  int generator_count_;
  int order_;
  CoefficientMap coefficients_;
};

/// Truncated concatenation (tensor) product.
TensorSeries concat_product(const TensorSeries& a, const TensorSeries& b,
                            int order_cap);

/// All iterated integrals int_loop theta_{i_1} ... theta_{i_n} of a scalar
/// form basis along a closed loop, for 0 <= n <= order, computed in one
/// shared pass over the triangular system indexed by words. The degree-0
/// coefficient is 1.
TensorSeries chen_parshin(std::span<const RationalMatrixForm> theta,
                          const Path& loop, int order, double tol,
                          long coefficient_cap = 1'000'000);

}  // namespace mono

#endif
