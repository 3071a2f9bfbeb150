#include "mono/algebra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

namespace mono {

namespace {

std::int64_t power_checked(long base, int exp, std::int64_t cap) {
  std::int64_t p = 1;
  for (int i = 0; i < exp; ++i) {
    p *= base;
    if (p > cap)
      throw TruncationTooLarge("degree slice g^n exceeds the cap " +
                               std::to_string(cap));
  }
  return p;
}

using SparseRow = std::map<std::int64_t, Complex>;

double row_scale(const SparseRow& r) {
  double m = 0;
  for (const auto& [c, v] : r) m = std::max(m, std::abs(v));
  return m;
}

/// Row echelon over sparse rows, pivoting each row on its largest-index
/// column. The pivot columns are exactly the monomials reducible to smaller
/// ones modulo the ideal slice, so the complement is the first-in-lex
/// surviving basis of the quotient.
struct SliceEchelon {
  std::map<std::int64_t, SparseRow> pivots;  // pivot column -> reduced row

  void insert(SparseRow row) {
    const double drop = 1e-11 * std::max(row_scale(row), 1e-300);
    while (!row.empty()) {
      const auto lead = std::prev(row.end());
      if (std::abs(lead->second) <= drop) {
        row.erase(lead);
        continue;
      }
      const auto it = pivots.find(lead->first);
      if (it == pivots.end()) {
        const Complex inv = 1.0 / lead->second;
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(lead->first, std::move(row));
        return;
      }
      const Complex factor = lead->second;  // pivot rows are normalized
      for (const auto& [c, v] : it->second) {
        auto [pos, fresh] = row.try_emplace(c, 0.0);
        pos->second -= factor * v;
        if (std::abs(pos->second) <= drop) row.erase(pos);
      }
    }
  }

  /// Full back-substitution: eliminate pivot columns from all other rows so
  /// every pivot monomial rewrites purely into surviving monomials.
  void reduce_fully() {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      for (auto& [col, row] : pivots) {
        if (col == it->first) continue;
        const auto hit = row.find(it->first);
        if (hit == row.end()) continue;
        const Complex factor = hit->second;
        row.erase(hit);
        for (const auto& [c, v] : it->second) {
          if (c == it->first) continue;
          auto [pos, fresh] = row.try_emplace(c, 0.0);
          pos->second -= factor * v;
          if (std::abs(pos->second) <= 1e-14) row.erase(pos);
        }
      }
    }
  }
};

/// Rows spanning the degree-n slice sum_{a+b=n-2} V^a (x) R (x) V^b.
SliceEchelon ideal_slice(const RelationSet& rel, int degree,
                         std::int64_t slice_cap) {
  const long g = rel.generator_count();
  power_checked(g, degree, slice_cap);
  SliceEchelon ech;
  if (degree < 2 || rel.free()) return ech;
  for (int a = 0; a + 2 <= degree; ++a) {
    const int b = degree - 2 - a;
    std::int64_t ga = 1, gb = 1;
    for (int i = 0; i < a; ++i) ga *= g;
    for (int i = 0; i < b; ++i) gb *= g;
    for (const Matrix& r : rel.relations())
      for (std::int64_t pa = 0; pa < ga; ++pa)
        for (std::int64_t ps = 0; ps < gb; ++ps) {
          SparseRow row;
          for (long i = 0; i < g; ++i)
            for (long j = 0; j < g; ++j) {
              const Complex c = r(i, j);
              if (c == Complex(0, 0)) continue;
              const std::int64_t col = (((pa * g + i) * g) + j) * gb + ps;
              row[col] += c;
            }
          ech.insert(std::move(row));
        }
  }
  return ech;
}

std::int64_t word_index(const std::vector<int>& word, long g) {
  std::int64_t idx = 0;
  for (int letter : word) idx = idx * g + letter;
  return idx;
}

std::vector<int> index_word(std::int64_t idx, int degree, long g) {
  std::vector<int> word(static_cast<std::size_t>(degree));
  for (int d = degree - 1; d >= 0; --d) {
    word[static_cast<std::size_t>(d)] = static_cast<int>(idx % g);
    idx /= g;
  }
  return word;
}

}  // namespace

RelationSet::RelationSet(int generator_count, std::vector<Matrix> relations)
    : generator_count_(generator_count), relations_(std::move(relations)) {
  if (generator_count_ < 1)
    throw InvalidRelationSet("need at least one generator");
  const Eigen::Index g = generator_count_;
  for (const Matrix& r : relations_) {
    if (r.rows() != g || r.cols() != g)
      throw InvalidRelationSet("relation tensor is not g x g");
    if (!r.allFinite())
      throw InvalidRelationSet("relation entries must be finite");
  }
  if (!relations_.empty()) {
    Matrix stacked(static_cast<Eigen::Index>(relations_.size()), g * g);
    for (std::size_t i = 0; i < relations_.size(); ++i)
      stacked.row(static_cast<Eigen::Index>(i)) =
          Eigen::Map<const Eigen::VectorXcd>(relations_[i].data(), g * g)
              .transpose();
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const auto& sv = svd.singularValues();
    long rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-12 * sv(0)) ++rank;
    if (rank != static_cast<long>(relations_.size()))
      throw InvalidRelationSet("relations are linearly dependent");
  }
}

std::int64_t graded_dimension(const RelationSet& relations, int degree,
                              std::int64_t slice_cap) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  const std::int64_t full = power_checked(relations.generator_count(), degree,
                                          slice_cap);
  if (degree < 2 || relations.free()) return full;
  const SliceEchelon ech = ideal_slice(relations, degree, slice_cap);
  return full - static_cast<std::int64_t>(ech.pivots.size());
}

TensorSeries project(const TensorSeries& series, const RelationSet& relations,
                     std::int64_t slice_cap) {
  if (series.generator_count() != relations.generator_count())
    throw CountMismatch("series and relations use different alphabets");
  const long g = relations.generator_count();
  TensorSeries out(series.generator_count(), series.order());

  // group coefficients by degree
  std::map<int, std::vector<std::pair<std::vector<int>, Complex>>> by_degree;
  for (const auto& [idx, c] : series.coefficients())
    by_degree[static_cast<int>(idx.size())].push_back({idx, c});

  for (const auto& [degree, entries] : by_degree) {
    if (degree < 2 || relations.free()) {
      for (const auto& [idx, c] : entries) out.set_coefficient(idx, c);
      continue;
    }
    SliceEchelon ech = ideal_slice(relations, degree, slice_cap);
    ech.reduce_fully();
    std::map<std::int64_t, Complex> reduced;
    for (const auto& [idx, c] : entries) {
      const std::int64_t col = word_index(idx, g);
      const auto pivot = ech.pivots.find(col);
      if (pivot == ech.pivots.end()) {
        reduced[col] += c;
        continue;
      }
      // e_col = -sum over surviving monomials of the reduced pivot row
      for (const auto& [sc, sv] : pivot->second) {
        if (sc == col) continue;
        reduced[sc] -= c * sv;
      }
    }
    for (const auto& [col, c] : reduced)
      if (c != Complex(0, 0))
        out.set_coefficient(index_word(col, degree, g), c);
  }
  return out;
}

AlgebraHom validate_hom(std::span<const Matrix> images,
                        const RelationSet& relations) {
  if (static_cast<int>(images.size()) != relations.generator_count())
    throw CountMismatch("image count differs from the generator count");
  if (images.empty()) throw CountMismatch("hom needs at least one image");
  const Eigen::Index r = images.front().rows();
  for (const Matrix& e : images)
    if (e.rows() != r || e.cols() != r)
      throw RankMismatch("hom images must be square of equal rank");

  double residual = 0;
  const int g = relations.generator_count();
  for (std::size_t k = 0; k < relations.relations().size(); ++k) {
    const Matrix& c = relations.relations()[k];
    Matrix image = Matrix::Zero(r, r);
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b)
        if (c(a, b) != Complex(0, 0))
          image += c(a, b) * images[static_cast<std::size_t>(a)] *
                   images[static_cast<std::size_t>(b)];
    const double res = cheb_norm(image);
    if (res > 1e-8) throw RelationViolated(static_cast<int>(k), res);
    residual = std::max(residual, res);
  }
  return AlgebraHom{r, std::vector<Matrix>(images.begin(), images.end()),
                    residual};
}

namespace {

Matrix left_multiplication_matrix(const Matrix& m) {
  // vec(m x) = (I (x) m) vec(x) in column-major order
  const Eigen::Index r = m.rows();
  Matrix big = Matrix::Zero(r * r, r * r);
  for (Eigen::Index k = 0; k < r; ++k) big.block(k * r, k * r, r, r) = m;
  return big;
}

}  // namespace

RationalMatrixForm connection_from_hom(const AlgebraHom& hom,
                                       std::span<const RationalMatrixForm> theta,
                                       bool left_multiplication) {
  if (static_cast<int>(theta.size()) != static_cast<int>(hom.images.size()))
    throw CountMismatch("need one scalar form per generator image");
  for (const RationalMatrixForm& t : theta)
    if (t.rank() != 1)
      throw RankMismatch("the form basis must consist of scalar forms");

  const Eigen::Index r = hom.target_rank;
  const Eigen::Index out_rank = left_multiplication ? r * r : r;
  auto image_of = [&](std::size_t i) -> Matrix {
    return left_multiplication ? left_multiplication_matrix(hom.images[i])
                               : hom.images[i];
  };

  std::vector<Complex> poles;
  std::vector<Matrix> residues;
  std::vector<Matrix> polynomial;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const Matrix e = image_of(i);
    const auto& t = theta[i];
    for (std::size_t k = 0; k < t.poles().size(); ++k) {
      const Complex p = t.poles()[k];
      const Complex c = t.residues()[k](0, 0);
      auto it = std::find(poles.begin(), poles.end(), p);
      if (it == poles.end()) {
        poles.push_back(p);
        residues.push_back(Matrix(c * e));
      } else {
        residues[static_cast<std::size_t>(it - poles.begin())] += c * e;
      }
    }
    if (t.polynomial().size() > polynomial.size())
      polynomial.resize(t.polynomial().size(), Matrix::Zero(out_rank, out_rank));
    for (std::size_t j = 0; j < t.polynomial().size(); ++j)
      polynomial[j] += t.polynomial()[j](0, 0) * e;
  }
  return RationalMatrixForm(out_rank, std::move(poles), std::move(residues),
                            std::move(polynomial));
}

Matrix apply_hom(const TensorSeries& series, const AlgebraHom& hom) {
  if (series.generator_count() != static_cast<int>(hom.images.size()))
    throw CountMismatch("series alphabet differs from the hom generators");
  const Eigen::Index r = hom.target_rank;
  Matrix sum = Matrix::Zero(r, r);
  for (const auto& [idx, c] : series.coefficients()) {
    Matrix monomial = Matrix::Identity(r, r);
    for (int letter : idx)
      monomial = monomial * hom.images[static_cast<std::size_t>(letter)];
    sum += c * monomial;
  }
  return sum;
}

Matrix apply_hom_degree(const TensorSeries& series, const AlgebraHom& hom,
                        int degree) {
  if (series.generator_count() != static_cast<int>(hom.images.size()))
    throw CountMismatch("series alphabet differs from the hom generators");
  const Eigen::Index r = hom.target_rank;
  Matrix sum = Matrix::Zero(r, r);
  for (const auto& [idx, c] : series.coefficients()) {
    if (static_cast<int>(idx.size()) != degree) continue;
    Matrix monomial = Matrix::Identity(r, r);
    for (int letter : idx)
      monomial = monomial * hom.images[static_cast<std::size_t>(letter)];
    sum += c * monomial;
  }
  return sum;
}

double verify_lemma_iterated(const AlgebraHom& hom,
                             std::span<const RationalMatrixForm> theta,
                             const Path& loop, int degree, double tol) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  const Eigen::Index r = hom.target_rank;
  const TensorSeries series = chen_parshin(theta, loop, degree, tol);
  const Matrix lhs = apply_hom_degree(series, hom, degree);
  Matrix rhs;
  if (degree == 0) {
    rhs = Matrix::Identity(r, r);
  } else {
    const RationalMatrixForm phi = connection_from_hom(hom, theta);
    const std::vector<RationalMatrixForm> copies(static_cast<std::size_t>(degree),
                                                 phi);
    rhs = iterated_integral(copies, loop, tol);
  }
  return cheb_norm(lhs - rhs);
}

ChenParshinTail chen_parshin_limit(const AlgebraHom& hom,
                                   std::span<const RationalMatrixForm> theta,
                                   const Path& loop, int order, double tol) {
  const TensorSeries series = chen_parshin(theta, loop, order, tol);
  ChenParshinTail out;
  out.partial_sum = apply_hom(series, hom);
  const RationalMatrixForm phi = connection_from_hom(hom, theta);
  out.reference = monodromy(phi, loop, tol);
  out.residual = cheb_norm(out.partial_sum - out.reference);
  return out;
}

}  // namespace mono
