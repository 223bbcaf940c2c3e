#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cqed/spaces.hpp"

namespace cqed {

using Complex = std::complex<double>;
using SparseCd = Eigen::SparseMatrix<Complex>;
using MatrixCd = Eigen::MatrixXcd;
using VectorCd = Eigen::VectorXcd;

/// Complex operator on a composite space.  Storage is sparse; dense views
/// are materialized on demand (exact eigensolvers stay dense up to
/// kDenseDimCap, larger problems route to sparse Krylov paths).
class OperatorMatrix {
 public:
  static constexpr int kDenseDimCap = 512;

  OperatorMatrix() = default;
  OperatorMatrix(SparseCd matrix, CompositeSpace space, bool hermitian);
  OperatorMatrix(const MatrixCd& matrix, CompositeSpace space, bool hermitian);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CompositeSpace& space() const { return space_; }
  const SparseCd& sparse() const { return matrix_; }
  MatrixCd dense() const { return MatrixCd(matrix_); }
  bool hermitian() const { return hermitian_; }

  VectorCd apply(const VectorCd& v) const { return matrix_ * v; }

  OperatorMatrix operator+(const OperatorMatrix& other) const;
  OperatorMatrix operator-(const OperatorMatrix& other) const;
  OperatorMatrix operator*(const OperatorMatrix& other) const;
  OperatorMatrix scaled(Complex factor) const;
  OperatorMatrix adjoint() const;

  /// [A, B] = AB - BA
  static OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
  /// max |A_ij - (A^dagger)_ij|
  double hermiticity_defect() const;

  static OperatorMatrix identity(const CompositeSpace& space);
  static OperatorMatrix zero(const CompositeSpace& space);

  /// Lift a single-factor operator into the composite space by tensoring
  /// identities on all other factors.
  static OperatorMatrix embed(const OperatorMatrix& op, std::size_t factor_index,
                              const CompositeSpace& target);

 private:
  SparseCd matrix_;
  CompositeSpace space_;
  bool hermitian_ = false;
};

/// Kronecker product with the left operand as the slowest-varying index.
SparseCd kronecker(const SparseCd& a, const SparseCd& b);

}  // namespace cqed
