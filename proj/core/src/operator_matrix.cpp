#include "cqed/operator_matrix.hpp"

#include <stdexcept>
#include <vector>

#include "cqed/tolerances.hpp"

namespace cqed {

OperatorMatrix::OperatorMatrix(SparseCd matrix, CompositeSpace space, bool hermitian)
    : matrix_(std::move(matrix)), space_(std::move(space)), hermitian_(hermitian) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("operator matrix must be square");
  if (matrix_.rows() != space_.dim())
    throw std::invalid_argument("operator dimension does not match space");
  if (hermitian_ && hermiticity_defect() > tol::kAlgebraic)
    throw std::invalid_argument("matrix flagged Hermitian fails the Hermiticity check");
}

OperatorMatrix::OperatorMatrix(const MatrixCd& matrix, CompositeSpace space, bool hermitian)
    : OperatorMatrix(SparseCd(matrix.sparseView(1.0, 0.0)), std::move(space), hermitian) {}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  return OperatorMatrix(SparseCd(matrix_ + other.matrix_), space_,
                        hermitian_ && other.hermitian_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
  return OperatorMatrix(SparseCd(matrix_ - other.matrix_), space_,
                        hermitian_ && other.hermitian_);
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
  return OperatorMatrix(SparseCd(matrix_ * other.matrix_), space_, false);
}

OperatorMatrix OperatorMatrix::scaled(Complex factor) const {
  const bool herm = hermitian_ && std::abs(factor.imag()) == 0.0;
  return OperatorMatrix(SparseCd(matrix_ * factor), space_, herm);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(SparseCd(matrix_.adjoint()), space_, hermitian_);
}

OperatorMatrix OperatorMatrix::commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return OperatorMatrix(SparseCd(a.matrix_ * b.matrix_ - b.matrix_ * a.matrix_),
                        a.space_, false);
}

double OperatorMatrix::hermiticity_defect() const {
  SparseCd diff = SparseCd(matrix_ - SparseCd(matrix_.adjoint()));
  double maxabs = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseCd::InnerIterator it(diff, k); it; ++it)
      maxabs = std::max(maxabs, std::abs(it.value()));
  return maxabs;
}

OperatorMatrix OperatorMatrix::identity(const CompositeSpace& space) {
  SparseCd id(space.dim(), space.dim());
  id.setIdentity();
  return OperatorMatrix(std::move(id), space, true);
}

OperatorMatrix OperatorMatrix::zero(const CompositeSpace& space) {
  return OperatorMatrix(SparseCd(space.dim(), space.dim()), space, true);
}

SparseCd kronecker(const SparseCd& a, const SparseCd& b) {
  SparseCd out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseCd::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseCd::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                             static_cast<int>(ia.col() * b.cols() + ib.col()),
                             ia.value() * ib.value());
        }
      }
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

OperatorMatrix OperatorMatrix::embed(const OperatorMatrix& op, std::size_t factor_index,
                                     const CompositeSpace& target) {
  if (factor_index >= target.n_factors())
    throw std::invalid_argument("factor index out of range");
  if (op.dim() != target.factor_dim(factor_index))
    throw std::invalid_argument("operator does not act on the requested factor");

  SparseCd acc(1, 1);
  acc.insert(0, 0) = Complex(1.0, 0.0);
  for (std::size_t k = 0; k < target.n_factors(); ++k) {
    if (k == factor_index) {
      acc = kronecker(acc, op.sparse());
    } else {
      SparseCd id(target.factor_dim(k), target.factor_dim(k));
      id.setIdentity();
      acc = kronecker(acc, id);
    }
  }
  return OperatorMatrix(std::move(acc), target, op.hermitian());
}

}  // namespace cqed
