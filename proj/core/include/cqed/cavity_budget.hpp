#pragma once

#include <vector>

namespace cqed::budget {

/// Two-mirror resonator geometry.  Lengths in meters; finesse dimensionless.
struct CavityGeometry {
  double finesse = 0.0;
  double waist = 0.0;       // mode waist w0
  double wavelength = 0.0;  // lambda
  double length = 0.0;      // mirror spacing L; optional (0 = unset)
};

/// Single-atom cooperativity eta = 24 F / (pi k^2 w0^2), k = 2 pi / lambda.
double cooperativity_geometric(const CavityGeometry& geom);

struct GeometricRates {
  double kappa = 0.0;  // pi c / (F L), angular units
  double g = 0.0;      // sqrt(eta kappa Gamma) / 2
  double eta = 0.0;
};

/// kappa from standard resonator theory (free spectral range over finesse),
/// g back-solved so that 4 g^2 / (kappa Gamma) = eta exactly.
GeometricRates rates_from_geometry(const CavityGeometry& geom, double gamma_atom);

struct PhaseShiftCeiling {
  double phi1_max = 0.0;   // sqrt(eta) / (2 nbar)
  double delta_opt = 0.0;  // g sqrt(Gamma / kappa)
  double phi1_scan = 0.0;  // grid maximum of 2 g^2 / (Delta nbar kappa_tilde)
  double delta_scan = 0.0;
};

/// Single-photon dispersive phase shift budget with the detuning-broadened
/// linewidth kappa_tilde = kappa + (g/Delta)^2 Gamma.
PhaseShiftCeiling phase_shift_ceiling(double eta, double nbar, double g, double kappa,
                                      double gamma_atom);

struct IsingBudget {
  double j = 0.0;          // (4 n0 Omega1^2 / kappa) d / (1 + d^2)
  double gamma_coll = 0.0; // J kappa / delta
  double ratio = 0.0;      // J / (gamma_coll + Gamma_sc)
  double d = 0.0;          // 2 delta / kappa
  double delta_opt = 0.0;  // scan maximum of the ratio over delta
  double ratio_opt = 0.0;
};

/// Interaction-to-decay budget for the driven-cavity Ising coupling; the
/// delta scan locates the ratio optimum near kappa sqrt(eta) / 2.
IsingBudget ising_budget(double n0, double omega1, double kappa, double delta,
                         double eta, double gamma_sc);

struct TwistingGeometry {
  double sigma2_squeezed = 0.0;  // 1/(1+Q^2) + Q/((1+Q^2) d), CSS = 1
  double sigma2_anti = 0.0;
  double tilt = 0.0;             // arctan(2/Q) / 2
};

/// Gaussian ellipse model of twisting with dissipation, Q = N J t.
TwistingGeometry twisting_geometry(double q_twist, double d);

enum class SqueezingMode { Measurement, Twisting };

struct SqueezingLimit {
  double xi2_opt = 0.0;
  double t_opt_gamma_sc = 0.0;  // optimal time in units of 1/Gamma_sc
};

/// Minimizes xi^2(t) = [c/(N eta Gsc t) + r Gsc t] exp(2 Gsc t) over t by
/// golden-section search (1e-6 relative); r = 0 models a cycling
/// transition, r > 0 Raman branching into dark states.
SqueezingLimit squeezing_limits(double n_atoms, double eta, double branching_r,
                                SqueezingMode mode, bool cycling);

/// Least-squares slope of log(y) vs log(x); used to fit scaling exponents.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cqed::budget
