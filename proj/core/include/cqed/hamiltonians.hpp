#pragma once

#include <vector>

#include "cqed/operator_matrix.hpp"
#include "cqed/quantum_state.hpp"
#include "cqed/spin_algebra.hpp"

// Hamiltonian constructors.  Conventions: hbar = 1, all couplings are
// angular frequencies, time is the reciprocal unit.  Composite spaces put
// the spin factor first (slowest-varying index), Fock factors after it.
namespace cqed::hamiltonians {

/// H = g (a^dag s_- + a s_+) + Delta s_z on SpinSpace(1/2) x Fock(n_max).
OperatorMatrix jaynes_cummings(double g, double delta, int n_max);

/// H = g (a^dag S_- + a S_+) + Delta S_z on SpinSpace(S) x Fock(n_max).
OperatorMatrix tavis_cummings(double g, double delta, double spin, int n_max);

/// Single-atom dispersive shift H = Omega1 a^dag a sigma_z (Pauli z) on
/// SpinSpace(1/2) x Fock(n_max).
OperatorMatrix dispersive_single(double omega1, int n_max);

/// Collective dispersive shift H = Omega1 a^dag a S_z.
OperatorMatrix dispersive_collective(double omega1, double spin, int n_max);

/// One-axis twisting H = chi S_z^2 / N with N = 2S.
OperatorMatrix one_axis_twisting(double chi, double spin);

struct DrivenIsingResult {
  OperatorMatrix h_eff;    // n0 Omega1 S_z + J S_z^2
  double coupling_j;       // J = (4 n0 Omega1^2 / kappa) d / (1 + d^2)
  double effective_field;  // n0 Omega1, removable by spin echo
  double d;                // 2 delta / kappa
};

DrivenIsingResult driven_ising(double n0, double omega1, double kappa, double delta,
                               double spin);

/// Raman spin exchange H = (chi_m S_+ S_- + chi_p S_- S_+) / N.
OperatorMatrix xy_raman(double chi_plus, double chi_minus, double spin);

/// Collective XXZ: H = J_xy (S_x^2 + S_y^2) + J_z S_z^2.
OperatorMatrix xxz_collective(double j_xy, double j_z, double spin);

/// Weighted XXZ on per-site spins f: H = J_xy (F_x^2 + F_y^2) + J_z F_z^2
/// with F_a = sum_j c_j f_j^a.  Total dimension capped at 4096.
OperatorMatrix xxz_weighted(double j_xy, double j_z, const std::vector<double>& weights,
                            double site_spin);

/// Inhomogeneous-field XY (BCS pseudospin): uniform-weight XY exchange plus
/// sum_j h_j s_j^z on per-site spin-1/2.
OperatorMatrix xy_inhomogeneous_field(double j_xy, const std::vector<double>& fields);

/// Dicke model H = w0 S_z + wc a^dag a + G (a^dag + a)(S_+ + S_-).
OperatorMatrix dicke(double omega0, double omega_c, double g_coupling, double spin,
                     int n_max);

/// Parity operator exp(i pi (a^dag a + S_z + S)) on SpinSpace(S) x Fock.
OperatorMatrix dicke_parity(double spin, int n_max);

/// Faraday interaction H = Omega1 (n_+ - n_-) S_z on Spin x Fock x Fock.
OperatorMatrix faraday(double omega1, double spin, int n_max_per_polarization);

/// Population of the top Fock level of factor `fock_factor`; a cutoff
/// adequacy diagnostic (should stay < 1e-6 along any believable evolution).
double fock_tail_population(const QuantumState& state, std::size_t fock_factor);

}  // namespace cqed::hamiltonians
