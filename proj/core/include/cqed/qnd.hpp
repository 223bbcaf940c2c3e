#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqed/operator_matrix.hpp"
#include "cqed/quantum_state.hpp"

namespace cqed::qnd {

struct HeraldedOutcome {
  std::string label;
  double probability = 0.0;
  QuantumState state;      // post-measurement, normalized
  double fidelity = 0.0;   // versus the declared target state
};

struct ParityHeraldResult {
  HeraldedOutcome even;
  HeraldedOutcome odd;
  double parity_even = 0.0;  // <Pi> of the even-heralded field state
  double parity_odd = 0.0;
};

/// Ramsey parity readout: atom along x, interaction exp(-i Phi1 a^dag a
/// sigma_z / 2), x-basis projection.  At Phi1 = pi the heralded field
/// states are the even/odd cats (|i alpha> +/- |-i alpha>)/norm, used as
/// fidelity targets.
ParityHeraldResult parity_herald(double alpha, double phi1, int n_max);

struct ProgressiveCollapseResult {
  int hidden_n = 0;                       // photon number drawn once
  std::vector<double> entropy;            // posterior entropy after each atom
  std::vector<double> posterior;          // final distribution over n
  double concentration = 0.0;             // max of the final posterior
  std::vector<int> outcomes;              // +/-1 per atom
};

/// Sequential Bayesian photon-number collapse: atom k read out with phase
/// basis_schedule[k mod size], likelihood P(+|n) = (1 + cos(Phi1 n +
/// beta))/2.  Empty schedule defaults to {0, pi/4, pi/2, 3pi/4}.
ProgressiveCollapseResult progressive_collapse(double alpha, double phi1, int n_atoms,
                                               std::vector<double> basis_schedule,
                                               std::uint64_t seed);

struct ConditionalSqueezeResult {
  double xi2 = 0.0;
  double var_sz_conditional = 0.0;  // normalized to the CSS value N/4
  double backaction_var_sy = 0.0;   // minimum-uncertainty partner variance
  double mean_shift_gain = 0.0;     // posterior mean shift per unit outcome
};

/// Gaussian conditional squeezing budget: measurement of S_z with noise
/// variance sigma2_m (in units of the projection noise N/4), contrast loss
/// e^{-Gamma_sc t}, and Raman spin-flip noise r Gamma_sc t.
ConditionalSqueezeResult conditional_squeeze_gaussian(double n_atoms, double sigma2_m,
                                                      double gamma_sc_t, double raman_r);

struct WHeraldResult {
  HeraldedOutcome outcome;
  double bimodality_d = 0.0;  // Ashman's D of the post-state S_z lobes
  bool aliasing_warning = false;
};

/// Dark-port Faraday herald: Kraus operator proportional to sin(Phi S_z)
/// applied to the CSS along x; the small-Phi limit heralds the x-basis
/// single-excitation Dicke (W) state.
WHeraldResult herald_w_faraday(int n_atoms, double phi);

/// Drive envelope samples (time, complex amplitude).
struct PulseShape {
  std::vector<std::pair<double, Complex>> samples;

  static PulseShape two_pulse(double dt);
  static PulseShape circle(double duration, int n_samples);
  static PulseShape exp_circle(double duration, double rate, int n_samples);
};

/// Heralded pulse carving: K = sum_k f_k e^{-kappa (T - t_k)/2}
/// e^{-i Omega1 t_k S_z} with detection at the end of the window T,
/// normalized to unit operator norm.
HeraldedOutcome paint(const QuantumState& initial, const PulseShape& pulse,
                      double omega1, double kappa, const QuantumState& target);

struct TransmissionSpectrum {
  std::vector<double> omega;
  std::vector<double> transmission;  // |t(omega)|^2
  double splitting = 0.0;            // separation of the two highest peaks
};

/// Weak-probe steady-state transmission through the collectively coupled
/// cavity: t(w) = (kappa/2) / (-i w + kappa/2 + g^2 N / (-i w + Gamma/2)).
TransmissionSpectrum vacuum_rabi_spectrum(double g, int n_atoms, double kappa,
                                          double gamma_atom,
                                          const std::vector<double>& probe_grid);

}  // namespace cqed::qnd
