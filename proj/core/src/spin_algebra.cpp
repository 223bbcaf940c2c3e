#include "cqed/spin_algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cqed/tolerances.hpp"

namespace cqed {

namespace {

// exp(-i angle G) v via eigendecomposition of the Hermitian generator.
VectorCd apply_rotation(const MatrixCd& generator, double angle, const VectorCd& v) {
  Eigen::SelfAdjointEigenSolver<MatrixCd> es(generator);
  VectorCd phases(v.size());
  for (int k = 0; k < v.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -angle * es.eigenvalues()(k)));
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * v));
}

}  // namespace

SpinOperators spin_operators(const SpinSpace& space) {
  const int d = space.dim;
  const double S = space.spin;
  SparseCd sz(d, d), sp(d, d), sm(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = space.m_of(i);
    sz.insert(i, i) = m;
    if (i > 0) {
      // S_+ |S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>; index i-1 carries m+1.
      const double c = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
      sp.insert(i - 1, i) = c;
      sm.insert(i, i - 1) = c;
    }
  }
  CompositeSpace cs = CompositeSpace::single(space);
  SparseCd sx = SparseCd(0.5 * (sp + sm));
  SparseCd sy = SparseCd(Complex(0.0, -0.5) * (sp - sm));
  return SpinOperators{
      OperatorMatrix(std::move(sx), cs, true), OperatorMatrix(std::move(sy), cs, true),
      OperatorMatrix(std::move(sz), cs, true), OperatorMatrix(std::move(sp), cs, false),
      OperatorMatrix(std::move(sm), cs, false)};
}

QuantumState coherent_spin_state(const SpinSpace& space, double theta, double phi) {
  const SpinOperators S = spin_operators(space);
  QuantumState north = QuantumState::basis(0, CompositeSpace::single(space));
  VectorCd v = apply_rotation(S.sy.dense(), theta, north.amplitudes());
  for (int i = 0; i < space.dim; ++i)
    v(i) *= std::exp(Complex(0.0, -phi * space.m_of(i)));
  return QuantumState::pure(std::move(v), CompositeSpace::single(space)).normalized();
}

QuantumState dicke_state(const SpinSpace& space, double m) {
  return QuantumState::basis(space.index_of(m), CompositeSpace::single(space));
}

QuantumState rotate(const QuantumState& state, Axis axis, double angle) {
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  n(static_cast<int>(axis)) = 1.0;
  return rotate(state, n, angle);
}

QuantumState rotate(const QuantumState& state, const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("rotation axis must be a unit vector");
  if (state.space().n_factors() != 1 ||
      !std::holds_alternative<SpinSpace>(state.space().factor(0)))
    throw std::invalid_argument("rotate expects a single-spin-factor state");
  const SpinSpace& sp = std::get<SpinSpace>(state.space().factor(0));
  const SpinOperators S = spin_operators(sp);
  MatrixCd G = axis(0) * S.sx.dense() + axis(1) * S.sy.dense() + axis(2) * S.sz.dense();
  if (state.is_pure())
    return QuantumState::pure(apply_rotation(G, angle, state.amplitudes()), state.space());
  Eigen::SelfAdjointEigenSolver<MatrixCd> es(G);
  VectorCd phases(state.dim());
  for (int k = 0; k < state.dim(); ++k)
    phases(k) = std::exp(Complex(0.0, -angle * es.eigenvalues()(k)));
  MatrixCd U = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return QuantumState::mixed(U * state.density() * U.adjoint(), state.space());
}

Moments moments(const QuantumState& state, const std::vector<OperatorMatrix>& ops) {
  const int n = static_cast<int>(ops.size());
  Moments out;
  out.expectations.resize(n);
  out.variances.resize(n);
  out.covariances.setZero(n, n);

  for (const auto& op : ops)
    if (op.dim() != state.dim())
      throw std::invalid_argument("moments: operator/state dimension mismatch");

  if (state.is_pure()) {
    const VectorCd& psi = state.amplitudes();
    std::vector<VectorCd> applied(n);
    for (int k = 0; k < n; ++k) applied[k] = ops[k].sparse() * psi;
    for (int k = 0; k < n; ++k) out.expectations[k] = psi.dot(applied[k]).real();
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const double sym = applied[j].dot(applied[k]).real();
        const double cov = sym - out.expectations[j] * out.expectations[k];
        out.covariances(j, k) = cov;
        out.covariances(k, j) = cov;
      }
    }
  } else {
    const MatrixCd& rho = state.density();
    for (int k = 0; k < n; ++k)
      out.expectations[k] = MatrixCd(ops[k].sparse() * rho).trace().real();
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const MatrixCd prod = ops[j].sparse() * MatrixCd(ops[k].sparse() * rho);
        // symmetrized second moment Re tr(rho {A,B}/2) = Re tr(A B rho)
        const double sym = prod.trace().real();
        const double cov = sym - out.expectations[j] * out.expectations[k];
        out.covariances(j, k) = cov;
        out.covariances(k, j) = cov;
      }
    }
  }
  for (int k = 0; k < n; ++k) out.variances[k] = out.covariances(k, k);
  return out;
}

Eigen::Vector3d mean_spin(const QuantumState& state, const SpinOperators& S) {
  return Eigen::Vector3d(state.expectation(S.sx).real(), state.expectation(S.sy).real(),
                         state.expectation(S.sz).real());
}

SqueezingEllipse squeezing_ellipse(const QuantumState& state, const SpinOperators& S,
                                   int n_grid) {
  SqueezingEllipse out;
  const Eigen::Vector3d mean = mean_spin(state, S);
  if (mean.norm() <= 0.0 || mean.norm() < 1e-12)
    throw std::invalid_argument("squeezing_ellipse: zero mean spin, frame undefined");
  out.mean_direction = mean.normalized();

  // Build an orthonormal transverse frame (e1, e2, n).
  Eigen::Vector3d seed = std::abs(out.mean_direction(2)) < 0.9
                             ? Eigen::Vector3d::UnitZ()
                             : Eigen::Vector3d::UnitX();
  out.e1 = seed.cross(out.mean_direction).normalized();
  out.e2 = out.mean_direction.cross(out.e1);

  auto component = [&](const Eigen::Vector3d& n) {
    return OperatorMatrix(
        SparseCd(n(0) * S.sx.sparse() + n(1) * S.sy.sparse() + n(2) * S.sz.sparse()),
        S.sx.space(), true);
  };
  const OperatorMatrix s1 = component(out.e1);
  const OperatorMatrix s2 = component(out.e2);
  const Moments m = moments(state, {s1, s2});
  const double c11 = m.covariances(0, 0);
  const double c22 = m.covariances(1, 1);
  const double c12 = m.covariances(0, 1);

  auto variance_of = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return c * c * c11 + s * s * c22 + 2.0 * c * s * c12;
  };

  out.theta_grid.resize(n_grid);
  out.variance_grid.resize(n_grid);
  int argmin = 0, argmax = 0;
  for (int k = 0; k < n_grid; ++k) {
    const double th = std::numbers::pi * k / n_grid;
    out.theta_grid[k] = th;
    out.variance_grid[k] = variance_of(th);
    if (out.variance_grid[k] < out.variance_grid[argmin]) argmin = k;
    if (out.variance_grid[k] > out.variance_grid[argmax]) argmax = k;
  }

  // Golden-section refinement of the grid minimum to 1e-6 relative.
  const double step = std::numbers::pi / n_grid;
  double a = out.theta_grid[argmin] - step, b = out.theta_grid[argmin] + step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = variance_of(x1), f2 = variance_of(x2);
  while ((b - a) > 1e-6 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = variance_of(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = variance_of(x2);
    }
  }
  out.theta_min = 0.5 * (a + b);
  out.v_min = variance_of(out.theta_min);
  // V(theta) is a pi-periodic sinusoid: min and max are pi/2 apart.
  out.v_max = variance_of(out.theta_min + std::numbers::pi / 2.0);
  return out;
}

}  // namespace cqed
