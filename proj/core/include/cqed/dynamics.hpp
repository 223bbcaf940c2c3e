#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cqed/operator_matrix.hpp"
#include "cqed/quantum_state.hpp"
#include "cqed/spin_algebra.hpp"

namespace cqed::dynamics {

struct IntegratorDiagnostics {
  long step_count = 0;
  double max_local_error = 0.0;
  double trace_drift = 0.0;  // |tr(rho) - 1| maximum for Lindblad runs
  double norm_drift = 0.0;   // | ||psi|| - 1 | maximum for unitary runs
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<QuantumState> states;  // empty when only moment tracks requested
  /// One row per time, one column per requested observable (Re<A_k>).
  Eigen::MatrixXd moment_tracks;
  IntegratorDiagnostics diagnostics;
};

/// Snapshots of exp(-iHt)|psi> at n_snapshots+1 equally spaced times
/// (including t=0 and t).  Exact eigendecomposition up to dim 512, Lanczos
/// propagation with adaptive step control beyond.  Norm preserved to 1e-9.
EvolutionResult evolve_unitary(const OperatorMatrix& h, const QuantumState& state,
                               double t, int n_snapshots);

struct CollapseOperator {
  OperatorMatrix op;
  double rate = 1.0;  // L_k = sqrt(rate) * op enters the dissipator
};

struct LindbladOptions {
  double rtol = 1e-8;
  /// Observables tracked at every snapshot; mandatory storage mode above
  /// dim 128 where full density-matrix snapshots are not retained.
  std::vector<OperatorMatrix> observables;
  bool store_states = true;  // ignored (forced off) above dim 128
};

/// Integrates drho/dt = -i[H,rho] + sum_k rate_k (L rho L^dag
/// - {L^dag L, rho}/2) with an embedded Runge-Kutta 4(5) scheme,
/// re-symmetrizing rho each accepted step.  Trace preserved within 1e-7.
EvolutionResult evolve_lindblad(const OperatorMatrix& h,
                                const std::vector<CollapseOperator>& collapse_ops,
                                const QuantumState& rho, double t, int n_snapshots,
                                const LindbladOptions& options = {});

struct DissipativeOatResult {
  std::vector<double> times;
  std::vector<double> v_min;       // squeezed transverse variance
  std::vector<double> v_max;       // antisqueezed transverse variance
  std::vector<double> wineland_xi2;
  std::vector<QuantumState> states;
  IntegratorDiagnostics diagnostics;
};

/// One-axis twisting with cavity-induced collective dephasing:
/// H = (chi/N) S_z^2, L = sqrt(gamma) S_z with gamma = (chi/N)(2/d).
/// Initial state is the +x coherent spin state.
DissipativeOatResult dissipative_oat(double chi, double d, double spin,
                                     const std::vector<double>& t_grid);

enum class SpinModel { XY, Ising, XXZ };

struct MeanFieldSetup {
  Eigen::MatrixXd coupling;      // symmetric J_ij, zero diagonal
  std::vector<double> fields;    // h_j along z
  SpinModel model = SpinModel::XY;
  double anisotropy = 0.0;       // z-coupling multiplier, used by XXZ
  double spin_length = 0.5;      // classical |s| per site
  double theta = 0.0, phi = 0.0; // initial CSS direction, shared by all sites
  /// Optional per-site initial unit directions; overrides (theta, phi).
  std::vector<Eigen::Vector3d> site_directions;
};

struct TrajectoryEnsemble {
  int n_traj = 0;
  std::uint64_t seed = 0;
  std::vector<double> times;
  /// Ensemble mean <s_j^a>(t): one entry per time, rows = sites, cols = xyz.
  std::vector<Eigen::MatrixXd> mean_spins;
  /// Connected correlators C^xx_ij(t) = <s_i^x s_j^x> - <s_i^x><s_j^x>.
  std::vector<Eigen::MatrixXd> cxx;
  double max_length_drift = 0.0;  // worst per-trajectory | |s| - s0 |
};

/// Classical precession ds_i/dt = s_i x B_i with B_i from the chosen model.
/// n_traj = 1 gives pure mean field; n_traj > 1 adds truncated-Wigner
/// transverse Gaussian noise of variance s/2 per site, trajectory k seeded
/// from a deterministic sub-stream of (seed, k).
TrajectoryEnsemble mean_field_trajectories(const MeanFieldSetup& setup, int n_traj,
                                           std::uint64_t seed,
                                           const std::vector<double>& t_grid);

struct MeanFieldDickeResult {
  std::vector<double> g_grid;
  std::vector<double> order_parameter;  // |<a>| per grid point
  /// Z2-conjugate field amplitudes (+|a|, -|a|) per grid point.
  std::vector<std::pair<double, double>> branches;
  double threshold = 0.0;  // critical coupling from bisection
  bool converged = true;
};

/// Damped self-consistency iteration for the Dicke normal/superradiant
/// transition; the threshold is located by bisection to 1e-4 relative.
MeanFieldDickeResult mean_field_dicke(double omega0, double omega_c,
                                      const std::vector<double>& g_grid, double spin);

}  // namespace cqed::dynamics
