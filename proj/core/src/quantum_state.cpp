#include "cqed/quantum_state.hpp"

#include <stdexcept>

#include "cqed/tolerances.hpp"

namespace cqed {

QuantumState QuantumState::pure(VectorCd amplitudes, CompositeSpace space) {
  if (amplitudes.size() != space.dim())
    throw std::invalid_argument("state dimension does not match space");
  QuantumState s;
  s.pure_ = true;
  s.psi_ = std::move(amplitudes);
  s.space_ = std::move(space);
  return s;
}

QuantumState QuantumState::mixed(MatrixCd density, CompositeSpace space) {
  if (density.rows() != density.cols() || density.rows() != space.dim())
    throw std::invalid_argument("density matrix dimension does not match space");
  QuantumState s;
  s.pure_ = false;
  s.rho_ = std::move(density);
  s.space_ = std::move(space);
  return s;
}

QuantumState QuantumState::basis(int index, CompositeSpace space) {
  VectorCd v = VectorCd::Zero(space.dim());
  v(index) = Complex(1.0, 0.0);
  return pure(std::move(v), std::move(space));
}

const VectorCd& QuantumState::amplitudes() const {
  if (!pure_) throw std::logic_error("not a pure state");
  return psi_;
}

const MatrixCd& QuantumState::density() const {
  if (pure_) throw std::logic_error("pure state has no stored density matrix");
  return rho_;
}

MatrixCd QuantumState::density_matrix() const {
  if (pure_) return psi_ * psi_.adjoint();
  return rho_;
}

Complex QuantumState::expectation(const SparseCd& op) const {
  if (pure_) return psi_.dot(op * psi_);  // Eigen dot conjugates the left side
  return MatrixCd(op * rho_).trace();
}

Complex QuantumState::expectation(const OperatorMatrix& op) const {
  if (op.dim() != dim()) throw std::invalid_argument("operator/state dimension mismatch");
  if (pure_) return psi_.dot(op.sparse() * psi_);
  return MatrixCd(op.sparse() * rho_).trace();
}

double QuantumState::norm() const {
  if (pure_) return psi_.norm();
  return std::abs(rho_.trace());
}

double QuantumState::trace() const {
  if (pure_) return psi_.squaredNorm();
  return rho_.trace().real();
}

double QuantumState::fidelity(const QuantumState& other) const {
  if (pure_ && other.pure_) {
    const Complex overlap = psi_.dot(other.psi_);
    return std::norm(overlap);
  }
  // tr(rho sigma) overlap; exact fidelity when at least one side is pure.
  return (density_matrix() * other.density_matrix()).trace().real();
}

QuantumState QuantumState::normalized() const {
  QuantumState s = *this;
  if (pure_) {
    const double n = psi_.norm();
    if (n <= 0.0) throw std::runtime_error("cannot normalize zero state");
    s.psi_ /= n;
  } else {
    const double t = rho_.trace().real();
    if (t <= 0.0) throw std::runtime_error("cannot normalize zero-trace density matrix");
    s.rho_ /= t;
  }
  return s;
}

}  // namespace cqed
