#include "mono/form.hpp"

#include <cmath>

namespace mono {

RationalMatrixForm::RationalMatrixForm(Eigen::Index rank,
                                       std::vector<Complex> poles,
                                       std::vector<Matrix> residues,
                                       std::vector<Matrix> polynomial)
    : rank_(rank),
      poles_(std::move(poles)),
      residues_(std::move(residues)),
      polynomial_(std::move(polynomial)) {
  if (rank_ < 1) throw InvalidForm("form rank must be positive");
  if (poles_.size() != residues_.size())
    throw InvalidForm("pole and residue counts differ");
  for (std::size_t i = 0; i < poles_.size(); ++i)
    for (std::size_t j = i + 1; j < poles_.size(); ++j)
      if (poles_[i] == poles_[j]) throw InvalidForm("poles must be distinct");
  for (const Matrix& a : residues_)
    if (a.rows() != rank_ || a.cols() != rank_)
      throw InvalidForm("residue matrix is not square of the declared rank");
  for (const Matrix& b : polynomial_)
    if (b.rows() != rank_ || b.cols() != rank_)
      throw InvalidForm("polynomial coefficient is not square of the declared rank");
  for (const Matrix& a : residues_)
    if (!a.allFinite()) throw InvalidForm("residue entries must be finite");
  for (const Matrix& b : polynomial_)
    if (!b.allFinite()) throw InvalidForm("polynomial entries must be finite");
}

RationalMatrixForm RationalMatrixForm::scalar(std::vector<Complex> poles,
                                              std::vector<Complex> residues,
                                              std::vector<Complex> polynomial) {
  std::vector<Matrix> res, poly;
  res.reserve(residues.size());
  poly.reserve(polynomial.size());
  for (Complex c : residues) res.push_back(scalar_matrix(c));
  for (Complex c : polynomial) poly.push_back(scalar_matrix(c));
  return RationalMatrixForm(1, std::move(poles), std::move(res), std::move(poly));
}

RationalMatrixForm RationalMatrixForm::zero(Eigen::Index rank) {
  return RationalMatrixForm(rank, {}, {});
}

Matrix RationalMatrixForm::evaluate(Complex z) const {
  Matrix a = Matrix::Zero(rank_, rank_);
  for (std::size_t k = 0; k < poles_.size(); ++k)
    a += residues_[k] / (z - poles_[k]);
  Complex zj = 1.0;
  for (const Matrix& b : polynomial_) {
    a += zj * b;
    zj *= z;
  }
  return a;
}

std::vector<Matrix> RationalMatrixForm::coefficients() const {
  std::vector<Matrix> out = residues_;
  out.insert(out.end(), polynomial_.begin(), polynomial_.end());
  return out;
}

bool RationalMatrixForm::all_residues_traceless(double tol) const {
  for (const Matrix& a : residues_)
    if (std::abs(a.trace()) > tol) return false;
  return true;
}

RationalMatrixForm RationalMatrixForm::trace_form() const {
  std::vector<Complex> res, poly;
  res.reserve(residues_.size());
  poly.reserve(polynomial_.size());
  for (const Matrix& a : residues_) res.push_back(a.trace());
  for (const Matrix& b : polynomial_) poly.push_back(b.trace());
  return scalar(poles_, std::move(res), std::move(poly));
}

RationalMatrixForm RationalMatrixForm::scaled(Complex factor) const {
  std::vector<Matrix> res = residues_, poly = polynomial_;
  for (Matrix& a : res) a *= factor;
  for (Matrix& b : poly) b *= factor;
  return RationalMatrixForm(rank_, poles_, std::move(res), std::move(poly));
}

RationalMatrixForm operator+(const RationalMatrixForm& a,
                             const RationalMatrixForm& b) {
  if (a.rank() != b.rank())
    throw RankMismatch("cannot add forms of different rank");
  std::vector<Complex> poles = a.poles_;
  std::vector<Matrix> residues = a.residues_;
  for (std::size_t k = 0; k < b.poles_.size(); ++k) {
    bool merged = false;
    for (std::size_t i = 0; i < poles.size(); ++i)
      if (poles[i] == b.poles_[k]) {
        residues[i] += b.residues_[k];
        merged = true;
        break;
      }
    if (!merged) {
      poles.push_back(b.poles_[k]);
      residues.push_back(b.residues_[k]);
    }
  }
  std::vector<Matrix> poly = a.polynomial_;
  if (b.polynomial_.size() > poly.size())
    poly.resize(b.polynomial_.size(), Matrix::Zero(a.rank(), a.rank()));
  for (std::size_t j = 0; j < b.polynomial_.size(); ++j)
    poly[j] += b.polynomial_[j];
  return RationalMatrixForm(a.rank(), std::move(poles), std::move(residues),
                            std::move(poly));
}

}  // namespace mono
