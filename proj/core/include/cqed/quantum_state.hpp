#pragma once

#include "cqed/operator_matrix.hpp"
#include "cqed/spaces.hpp"

namespace cqed {

/// Pure state vector or density matrix on a composite space.
class QuantumState {
 public:
  QuantumState() = default;

  static QuantumState pure(VectorCd amplitudes, CompositeSpace space);
  static QuantumState mixed(MatrixCd density, CompositeSpace space);
  /// Basis vector |index>.
  static QuantumState basis(int index, CompositeSpace space);

  bool is_pure() const { return pure_; }
  int dim() const { return pure_ ? static_cast<int>(psi_.size()) : static_cast<int>(rho_.rows()); }
  const CompositeSpace& space() const { return space_; }

  const VectorCd& amplitudes() const;
  const MatrixCd& density() const;
  /// Density matrix view valid for both representations.
  MatrixCd density_matrix() const;

  /// <A> = tr(rho A); real part is the physical expectation for Hermitian A.
  Complex expectation(const OperatorMatrix& op) const;
  Complex expectation(const SparseCd& op) const;

  double norm() const;
  double trace() const;

  /// |<phi|psi>|^2 for pure states, tr(rho sigma) overlap otherwise.
  double fidelity(const QuantumState& other) const;

  QuantumState normalized() const;

 private:
  bool pure_ = true;
  VectorCd psi_;
  MatrixCd rho_;
  CompositeSpace space_;
};

}  // namespace cqed
