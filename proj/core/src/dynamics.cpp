#include "cqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cqed/tolerances.hpp"

namespace cqed::dynamics {

namespace {

std::vector<double> snapshot_times(double t, int n_snapshots) {
  if (t < 0.0) throw std::invalid_argument("evolution time must be non-negative");
  const int n = std::max(n_snapshots, 1);
  std::vector<double> times(n + 1);
  for (int k = 0; k <= n; ++k) times[k] = t * static_cast<double>(k) / n;
  return times;
}

// One adaptive Lanczos sub-step: returns exp(-i h dt) v for Hermitian h,
// with the step recursively halved until the a-posteriori residual
// estimate beta_m |[exp(-i T dt)]_{m,1}| falls below tol.
VectorCd lanczos_apply(const SparseCd& h, VectorCd v, double dt, double tol,
                       IntegratorDiagnostics& diag) {
  constexpr int kMaxBasis = 48;
  constexpr int kMaxHalvings = 40;

  double remaining = dt;
  double step = dt;
  int halvings = 0;
  while (remaining > 0.0) {
    step = std::min(step, remaining);
    const double norm_v = v.norm();

    std::vector<VectorCd> basis;
    basis.push_back(v / norm_v);
    Eigen::VectorXd alpha(kMaxBasis), beta(kMaxBasis);
    int m = 0;
    double breakdown_beta = 0.0;
    for (; m < kMaxBasis; ++m) {
      VectorCd w = h * basis[m];
      alpha(m) = basis[m].dot(w).real();
      w -= Complex(alpha(m)) * basis[m];
      if (m > 0) w -= Complex(beta(m - 1)) * basis[m - 1];
      // full reorthogonalization (small m, keeps Lanczos stable)
      for (const VectorCd& q : basis) w -= q.dot(w) * q;
      breakdown_beta = w.norm();
      if (m + 1 == kMaxBasis || breakdown_beta < 1e-14 * norm_v) {
        ++m;
        break;
      }
      beta(m) = breakdown_beta;
      basis.push_back(w / breakdown_beta);
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    VectorCd phases(m);
    for (int i = 0; i < m; ++i)
      phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * step));
    Eigen::VectorXd e1 = es.eigenvectors().row(0).transpose();
    VectorCd small = es.eigenvectors() * (phases.array() * e1.array().cast<Complex>()).matrix();

    const bool exhausted = (m == kMaxBasis) && breakdown_beta >= 1e-14 * norm_v;
    const double residual = exhausted ? breakdown_beta * std::abs(small(m - 1)) : 0.0;
    if (residual > tol) {
      if (++halvings > kMaxHalvings)
        throw std::runtime_error("evolve_unitary: Krylov propagation failed to converge, residual " +
                                 std::to_string(residual));
      step *= 0.5;
      continue;
    }

    VectorCd next = VectorCd::Zero(v.size());
    for (int i = 0; i < m; ++i) next += small(i) * basis[i];
    v = norm_v * next;
    diag.step_count += 1;
    diag.max_local_error = std::max(diag.max_local_error, residual);
    remaining -= step;
    step *= 1.5;
  }
  return v;
}

}  // namespace

EvolutionResult evolve_unitary(const OperatorMatrix& h, const QuantumState& state,
                               double t, int n_snapshots) {
  if (!h.hermitian() || h.hermiticity_defect() > tol::kAlgebraic)
    throw std::invalid_argument("evolve_unitary: Hamiltonian must be Hermitian");
  if (h.dim() != state.dim())
    throw std::invalid_argument("evolve_unitary: dimension mismatch");

  EvolutionResult out;
  out.times = snapshot_times(t, n_snapshots);

  if (h.dim() <= OperatorMatrix::kDenseDimCap) {
    Eigen::SelfAdjointEigenSolver<MatrixCd> es(h.dense());
    const MatrixCd& v = es.eigenvectors();
    const Eigen::VectorXd& e = es.eigenvalues();
    if (state.is_pure()) {
      VectorCd coeff = v.adjoint() * state.amplitudes();
      for (double tau : out.times) {
        VectorCd phased = coeff;
        for (int k = 0; k < phased.size(); ++k)
          phased(k) *= std::exp(Complex(0.0, -e(k) * tau));
        VectorCd psi = v * phased;
        out.diagnostics.norm_drift =
            std::max(out.diagnostics.norm_drift, std::abs(psi.norm() - state.norm()));
        out.states.push_back(QuantumState::pure(std::move(psi), state.space()));
      }
    } else {
      MatrixCd rho0 = v.adjoint() * state.density() * v;
      for (double tau : out.times) {
        MatrixCd rho = rho0;
        for (int i = 0; i < rho.rows(); ++i)
          for (int j = 0; j < rho.cols(); ++j)
            rho(i, j) *= std::exp(Complex(0.0, -(e(i) - e(j)) * tau));
        out.states.push_back(QuantumState::mixed(v * rho * v.adjoint(), state.space()));
      }
    }
    out.diagnostics.step_count = static_cast<long>(out.times.size());
    return out;
  }

  if (!state.is_pure())
    throw std::invalid_argument(
        "evolve_unitary: density-matrix input only supported up to the dense cap");
  VectorCd psi = state.amplitudes();
  out.states.push_back(state);
  for (std::size_t k = 1; k < out.times.size(); ++k) {
    const double dt = out.times[k] - out.times[k - 1];
    psi = lanczos_apply(h.sparse(), psi, dt, 1e-10, out.diagnostics);
    out.diagnostics.norm_drift =
        std::max(out.diagnostics.norm_drift, std::abs(psi.norm() - state.norm()));
    out.states.push_back(QuantumState::pure(psi, state.space()));
  }
  return out;
}

namespace {

struct LindbladRhs {
  SparseCd h;
  std::vector<SparseCd> l_ops;       // sqrt(rate) absorbed
  std::vector<SparseCd> l_dag_l;     // rate absorbed

  MatrixCd operator()(const MatrixCd& rho) const {
    MatrixCd drho = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (std::size_t k = 0; k < l_ops.size(); ++k) {
      drho += l_ops[k] * rho * SparseCd(l_ops[k].adjoint());
      MatrixCd anti = l_dag_l[k] * rho;
      anti += rho * l_dag_l[k];
      drho -= 0.5 * anti;
    }
    return drho;
  }
};

// Embedded Cash-Karp 4(5) pair on the vectorized density matrix.
void integrate_lindblad(const LindbladRhs& rhs, MatrixCd& rho, double t0, double t1,
                        double rtol, IntegratorDiagnostics& diag) {
  static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                      b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                      c6 = 512.0 / 1771;
  static const double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                      d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                      d6 = c6 - 1.0 / 4;
  (void)a2; (void)a3; (void)a4; (void)a5; (void)a6;

  constexpr int kMaxRejections = 60;
  double t = t0;
  double h = (t1 - t0) / 16.0;
  int rejections = 0;
  while (t < t1 - 1e-15 * std::max(1.0, t1)) {
    h = std::min(h, t1 - t);
    MatrixCd k1 = rhs(rho);
    MatrixCd k2 = rhs(rho + h * b21 * k1);
    MatrixCd k3 = rhs(rho + h * (b31 * k1 + b32 * k2));
    MatrixCd k4 = rhs(rho + h * (b41 * k1 + b42 * k2 + b43 * k3));
    MatrixCd k5 = rhs(rho + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
    MatrixCd k6 = rhs(rho + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));

    MatrixCd err_mat = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    const double scale = std::max(1.0, rho.norm());
    const double err = err_mat.norm() / (rtol * scale);
    if (err > 1.0) {
      if (++rejections > kMaxRejections)
        throw std::runtime_error("evolve_lindblad: step control failed to meet tolerance");
      h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
      continue;
    }
    rejections = 0;
    rho += h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    rho = 0.5 * (rho + rho.adjoint().eval());  // re-symmetrize
    t += h;
    diag.step_count += 1;
    diag.max_local_error = std::max(diag.max_local_error, err * rtol);
    h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
  }
}

}  // namespace

EvolutionResult evolve_lindblad(const OperatorMatrix& h,
                                const std::vector<CollapseOperator>& collapse_ops,
                                const QuantumState& rho_in, double t, int n_snapshots,
                                const LindbladOptions& options) {
  if (h.dim() != rho_in.dim())
    throw std::invalid_argument("evolve_lindblad: dimension mismatch");

  LindbladRhs rhs;
  rhs.h = h.sparse();
  for (const CollapseOperator& c : collapse_ops) {
    if (c.rate < 0.0) throw std::invalid_argument("evolve_lindblad: negative rate");
    SparseCd l = std::sqrt(c.rate) * c.op.sparse();
    rhs.l_ops.push_back(l);
    rhs.l_dag_l.push_back(SparseCd(l.adjoint()) * l);
  }

  EvolutionResult out;
  out.times = snapshot_times(t, n_snapshots);
  const bool store_states = options.store_states && h.dim() <= 128;
  const std::size_t n_obs = options.observables.size();
  out.moment_tracks.resize(static_cast<Eigen::Index>(out.times.size()),
                           static_cast<Eigen::Index>(n_obs));

  MatrixCd rho = rho_in.density_matrix();
  const double trace0 = rho.trace().real();
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    if (k > 0)
      integrate_lindblad(rhs, rho, out.times[k - 1], out.times[k], options.rtol,
                         out.diagnostics);
    out.diagnostics.trace_drift =
        std::max(out.diagnostics.trace_drift, std::abs(rho.trace().real() - trace0));
    QuantumState snapshot = QuantumState::mixed(rho, rho_in.space());
    for (std::size_t j = 0; j < n_obs; ++j)
      out.moment_tracks(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          snapshot.expectation(options.observables[j]).real();
    if (store_states) out.states.push_back(std::move(snapshot));
  }
  if (out.diagnostics.trace_drift > tol::kLindbladTraceDrift)
    throw std::runtime_error("evolve_lindblad: trace drift exceeded tolerance");
  return out;
}

DissipativeOatResult dissipative_oat(double chi, double d, double spin,
                                     const std::vector<double>& t_grid) {
  if (d == 0.0)
    throw std::invalid_argument(
        "dissipative_oat: d = 0 is a pure measurement channel, not twisting");
  if (t_grid.empty()) throw std::invalid_argument("dissipative_oat: empty time grid");

  const SpinSpace ss = make_spin_space(spin);
  const double n_atoms = ss.atom_number();
  const SpinOperators S = spin_operators(ss);
  const double gamma = (chi / n_atoms) * (2.0 / d);

  SparseCd sz = S.sz.sparse();
  OperatorMatrix h(SparseCd(Complex(chi / n_atoms) * SparseCd(sz * sz)),
                   CompositeSpace::single(ss), true);
  std::vector<CollapseOperator> collapse;
  if (gamma != 0.0) collapse.push_back({S.sz, std::abs(gamma)});

  LindbladRhs rhs;
  rhs.h = h.sparse();
  for (const CollapseOperator& c : collapse) {
    SparseCd l = std::sqrt(c.rate) * c.op.sparse();
    rhs.l_ops.push_back(l);
    rhs.l_dag_l.push_back(SparseCd(l.adjoint()) * l);
  }

  DissipativeOatResult out;
  QuantumState css = coherent_spin_state(ss, std::numbers::pi / 2.0, 0.0);
  MatrixCd rho = css.density_matrix();

  double t_prev = 0.0;
  for (double tau : t_grid) {
    if (tau < t_prev)
      throw std::invalid_argument("dissipative_oat: time grid must be non-decreasing");
    if (tau > t_prev)
      integrate_lindblad(rhs, rho, t_prev, tau, 1e-8, out.diagnostics);
    t_prev = tau;

    QuantumState state = QuantumState::mixed(rho, css.space());
    SqueezingEllipse ellipse = squeezing_ellipse(state, S);
    const Eigen::Vector3d mean = mean_spin(state, S);
    out.times.push_back(tau);
    out.v_min.push_back(ellipse.v_min);
    out.v_max.push_back(ellipse.v_max);
    out.wineland_xi2.push_back(n_atoms * ellipse.v_min / mean.squaredNorm());
    out.states.push_back(std::move(state));
    out.diagnostics.trace_drift =
        std::max(out.diagnostics.trace_drift, std::abs(rho.trace().real() - 1.0));
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using SpinConfig = Eigen::Matrix<double, Eigen::Dynamic, 3>;

SpinConfig mean_field_rhs(const MeanFieldSetup& setup, const SpinConfig& s) {
  const Eigen::Index n = s.rows();
  // Effective field B_i = sum_j J_ij (s_j^x, s_j^y, lambda s_j^z) + h_i z,
  // with (1,1,lambda) replaced by the model's coupling pattern.
  double cxy = 1.0, cz = 0.0;
  switch (setup.model) {
    case SpinModel::XY: cxy = 1.0; cz = 0.0; break;
    case SpinModel::Ising: cxy = 0.0; cz = 1.0; break;
    case SpinModel::XXZ: cxy = 1.0; cz = setup.anisotropy; break;
  }
  SpinConfig field(n, 3);
  field.col(0) = cxy * (setup.coupling * s.col(0));
  field.col(1) = cxy * (setup.coupling * s.col(1));
  field.col(2) = cz * (setup.coupling * s.col(2));
  for (Eigen::Index i = 0; i < n; ++i) field(i, 2) += setup.fields[i];

  SpinConfig ds(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d si = s.row(i);
    const Eigen::Vector3d bi = field.row(i);
    ds.row(i) = si.cross(bi);
  }
  return ds;
}

void rk4_advance(const MeanFieldSetup& setup, SpinConfig& s, double t0, double t1,
                 double field_scale) {
  const double span = t1 - t0;
  if (span <= 0.0) return;
  const int substeps =
      std::max(1, static_cast<int>(std::ceil(span * std::max(field_scale, 1e-12) / 0.01)));
  const double dt = span / substeps;
  for (int k = 0; k < substeps; ++k) {
    SpinConfig k1 = mean_field_rhs(setup, s);
    SpinConfig k2 = mean_field_rhs(setup, s + 0.5 * dt * k1);
    SpinConfig k3 = mean_field_rhs(setup, s + 0.5 * dt * k2);
    SpinConfig k4 = mean_field_rhs(setup, s + dt * k3);
    s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace

TrajectoryEnsemble mean_field_trajectories(const MeanFieldSetup& setup, int n_traj,
                                           std::uint64_t seed,
                                           const std::vector<double>& t_grid) {
  const Eigen::Index n = setup.coupling.rows();
  if (setup.coupling.cols() != n || static_cast<Eigen::Index>(setup.fields.size()) != n)
    throw std::invalid_argument("mean_field_trajectories: shape mismatch");
  if ((setup.coupling - setup.coupling.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("mean_field_trajectories: coupling matrix must be symmetric");
  if (setup.spin_length <= 0.0)
    throw std::invalid_argument("mean_field_trajectories: spin length must be positive");
  if (n_traj < 1) throw std::invalid_argument("mean_field_trajectories: n_traj >= 1");
  if (t_grid.empty()) throw std::invalid_argument("mean_field_trajectories: empty grid");

  // Worst-case precession frequency bound, used to pick the RK4 substep.
  double field_scale = 0.0;
  const double j_row_max = setup.coupling.cwiseAbs().rowwise().sum().maxCoeff();
  const double coupling_gain = std::max(1.0, std::abs(setup.anisotropy));
  double h_max = 0.0;
  for (double h : setup.fields) h_max = std::max(h_max, std::abs(h));
  field_scale = j_row_max * setup.spin_length * coupling_gain * n + h_max;
  field_scale = std::max(field_scale, j_row_max * setup.spin_length * coupling_gain + h_max);

  if (!setup.site_directions.empty() &&
      static_cast<Eigen::Index>(setup.site_directions.size()) != n)
    throw std::invalid_argument("mean_field_trajectories: site_directions size mismatch");
  std::vector<Eigen::Vector3d> directions(n);
  std::vector<Eigen::Vector3d> frame1(n), frame2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    directions[i] =
        setup.site_directions.empty()
            ? Eigen::Vector3d(std::sin(setup.theta) * std::cos(setup.phi),
                              std::sin(setup.theta) * std::sin(setup.phi),
                              std::cos(setup.theta))
            : setup.site_directions[i].normalized();
    const Eigen::Vector3d aux = std::abs(directions[i].z()) < 0.9
                                    ? Eigen::Vector3d::UnitZ()
                                    : Eigen::Vector3d::UnitX();
    frame1[i] = directions[i].cross(aux).normalized();
    frame2[i] = directions[i].cross(frame1[i]);
  }

  TrajectoryEnsemble out;
  out.n_traj = n_traj;
  out.seed = seed;
  out.times = t_grid;
  const std::size_t n_times = t_grid.size();
  std::vector<Eigen::MatrixXd> sum_s(n_times, Eigen::MatrixXd::Zero(n, 3));
  std::vector<Eigen::MatrixXd> sum_xx(n_times, Eigen::MatrixXd::Zero(n, n));

  const double noise_sd = std::sqrt(setup.spin_length / 2.0);
  for (int traj = 0; traj < n_traj; ++traj) {
    std::mt19937_64 rng(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (traj + 1)));
    std::normal_distribution<double> gauss(0.0, noise_sd);

    SpinConfig s(n, 3);
    Eigen::VectorXd s0_len(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Vector3d si = setup.spin_length * directions[i];
      if (n_traj > 1) si += gauss(rng) * frame1[i] + gauss(rng) * frame2[i];
      s.row(i) = si;
      s0_len(i) = si.norm();
    }

    double t_prev = t_grid.front();
    rk4_advance(setup, s, 0.0, t_prev, field_scale);
    for (std::size_t k = 0; k < n_times; ++k) {
      if (k > 0) {
        rk4_advance(setup, s, t_prev, t_grid[k], field_scale);
        t_prev = t_grid[k];
      }
      sum_s[k] += s;
      sum_xx[k] += s.col(0) * s.col(0).transpose();
      for (Eigen::Index i = 0; i < n; ++i)
        out.max_length_drift =
            std::max(out.max_length_drift, std::abs(s.row(i).norm() - s0_len(i)));
    }
  }

  out.mean_spins.resize(n_times);
  out.cxx.resize(n_times);
  for (std::size_t k = 0; k < n_times; ++k) {
    out.mean_spins[k] = sum_s[k] / n_traj;
    out.cxx[k] = sum_xx[k] / n_traj -
                 out.mean_spins[k].col(0) * out.mean_spins[k].col(0).transpose();
  }
  return out;
}

namespace {

// Self-consistent field amplitude for the Dicke mean field: the spin
// anti-aligns with B = (4 G a, 0, omega0) and the cavity responds with
// a = -2 G <S_x> / omega_c.
double dicke_fixed_point(double omega0, double omega_c, double g, double spin,
                         bool& converged) {
  const double damping = 0.5;
  double a = 0.1 * std::sqrt(spin) + 1e-3;
  converged = false;
  for (int it = 0; it < 20000; ++it) {
    const double bx = 4.0 * g * a;
    const double bnorm = std::hypot(bx, omega0);
    const double sx = -spin * bx / bnorm;
    const double target = -2.0 * g * sx / omega_c;
    const double next = (1.0 - damping) * a + damping * target;
    if (std::abs(next - a) < 1e-12 * std::max(1.0, std::abs(a))) {
      converged = true;
      return next;
    }
    a = next;
  }
  return a;
}

}  // namespace

MeanFieldDickeResult mean_field_dicke(double omega0, double omega_c,
                                      const std::vector<double>& g_grid, double spin) {
  if (omega0 <= 0.0 || omega_c <= 0.0)
    throw std::invalid_argument("mean_field_dicke: frequencies must be positive");

  MeanFieldDickeResult out;
  out.g_grid = g_grid;
  double g_max = 0.0;
  for (double g : g_grid) {
    bool ok = false;
    const double a = std::abs(dicke_fixed_point(omega0, omega_c, g, spin, ok));
    out.converged = out.converged && ok;
    const double amp = a < 1e-6 * std::sqrt(std::max(spin, 1.0)) ? 0.0 : a;
    out.order_parameter.push_back(amp);
    out.branches.emplace_back(amp, -amp);
    g_max = std::max(g_max, std::abs(g));
  }

  // Threshold by bisection on the onset of a nonzero fixed point.
  double lo = 0.0;
  double hi = std::max(g_max, 2.0 * std::sqrt(omega0 * omega_c));
  auto superradiant = [&](double g) {
    bool ok = false;
    return std::abs(dicke_fixed_point(omega0, omega_c, g, spin, ok)) >
           1e-6 * std::sqrt(std::max(spin, 1.0));
  };
  while (!superradiant(hi)) hi *= 2.0;
  while ((hi - lo) > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    (superradiant(mid) ? hi : lo) = mid;
  }
  out.threshold = 0.5 * (lo + hi);
  return out;
}

}  // namespace cqed::dynamics
