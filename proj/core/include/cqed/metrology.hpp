#pragma once

#include <vector>

#include "cqed/quantum_state.hpp"
#include "cqed/spin_algebra.hpp"

namespace cqed::metrology {

/// Wineland squeezing parameter xi^2 = N V_min / |<S>|^2 for a state on a
/// single collective-spin space.  Throws when the mean spin vanishes.
double wineland_xi2(const QuantumState& state);

struct QfiResult {
  double fisher = 0.0;  // I_alpha = 4 Var(S_alpha) for a pure state
  double xi2_i = 0.0;   // N / I_alpha
};

/// Quantum Fisher information of a pure collective-spin state for rotation
/// about `axis`.
QfiResult qfi_pure(const QuantumState& state, Axis axis);

/// Fractional frequency stability sigma(tau) = xi / (sqrt(N) omega T)
/// * sqrt(T_cycle / tau) evaluated on the grid.
std::vector<double> allan_deviation(double xi, double n_atoms, double omega, double t_ramsey,
                                    double t_cycle, const std::vector<double>& tau_grid);

struct EchoProtocol {
  double chi = 1.0;
  double t_fwd = 0.0;
  Axis axis = Axis::Y;   // perturbation rotation axis
  double angle = 0.0;    // perturbation angle phi
  double t_rev = -1.0;   // defaults to t_fwd when negative
  int n_atoms = 0;
};

struct EchoResult {
  QuantumState final_state;
  double gain = 0.0;        // d<S_perp>/dphi at phi = 0, over N/2
  double dphi_min = 0.0;    // Delta S_perp / (d<S_perp>/dphi)
  double xi2_echo = 0.0;    // N dphi_min^2
  double echo_fidelity = 0.0;  // overlap with the initial CSS at phi = 0
};

/// Twist-untwist amplifier: CSS along x evolves under +chi twisting, is
/// kicked by R_axis(phi), then evolves under -chi.  The gain derivative is
/// a symmetric finite difference (step 1e-4) with one Richardson step.
EchoResult echo_protocol(const EchoProtocol& p);

struct OatOptimum {
  double t_opt = 0.0;
  double xi2_min = 0.0;
};

/// Minimum of xi^2(t) under exact one-axis twisting at unit chi.
OatOptimum oat_optimum(int n_atoms);

struct OatScanResult {
  std::vector<int> n_list;
  std::vector<OatOptimum> optima;
  double exponent = 0.0;  // log-log slope of xi2_min vs N
};

OatScanResult oat_optimum_scan(const std::vector<int>& n_list);

}  // namespace cqed::metrology
