#include "cqed/cavity_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed::budget {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kPi = std::numbers::pi;

void validate_geometry(const CavityGeometry& geom, bool need_length) {
  if (geom.finesse <= 0.0 || geom.waist <= 0.0 || geom.wavelength <= 0.0)
    throw std::invalid_argument("cavity geometry: finesse, waist, wavelength must be positive");
  if (geom.wavelength >= geom.waist)
    throw std::invalid_argument("cavity geometry: paraxial regime requires lambda < w0");
  if (need_length && geom.length <= 0.0)
    throw std::invalid_argument("cavity geometry: length required");
}

}  // namespace

double cooperativity_geometric(const CavityGeometry& geom) {
  validate_geometry(geom, false);
  const double k = 2.0 * kPi / geom.wavelength;
  return 24.0 * geom.finesse / (kPi * k * k * geom.waist * geom.waist);
}

GeometricRates rates_from_geometry(const CavityGeometry& geom, double gamma_atom) {
  validate_geometry(geom, true);
  if (gamma_atom <= 0.0)
    throw std::invalid_argument("rates_from_geometry: Gamma must be positive");
  GeometricRates out;
  out.eta = cooperativity_geometric(geom);
  out.kappa = kPi * kSpeedOfLight / (geom.finesse * geom.length);
  out.g = 0.5 * std::sqrt(out.eta * out.kappa * gamma_atom);
  return out;
}

PhaseShiftCeiling phase_shift_ceiling(double eta, double nbar, double g, double kappa,
                                      double gamma_atom) {
  if (eta <= 0.0 || nbar <= 0.0 || g <= 0.0 || kappa <= 0.0 || gamma_atom <= 0.0)
    throw std::invalid_argument("phase_shift_ceiling: all inputs must be positive");
  PhaseShiftCeiling out;
  out.phi1_max = std::sqrt(eta) / (2.0 * nbar);
  out.delta_opt = g * std::sqrt(gamma_atom / kappa);

  // Confirm the analytic optimum on a logarithmic Delta grid spanning four
  // decades around it.
  const int n_grid = 4001;
  for (int i = 0; i < n_grid; ++i) {
    const double delta = out.delta_opt * std::pow(10.0, -2.0 + 4.0 * i / (n_grid - 1.0));
    const double kappa_tilde = kappa + (g / delta) * (g / delta) * gamma_atom;
    const double phi1 = 2.0 * g * g / (delta * nbar * kappa_tilde);
    if (phi1 > out.phi1_scan) {
      out.phi1_scan = phi1;
      out.delta_scan = delta;
    }
  }
  return out;
}

namespace {

IsingBudget ising_at(double n0, double omega1, double kappa, double delta,
                     double gamma_sc) {
  IsingBudget out;
  out.d = 2.0 * delta / kappa;
  out.j = (4.0 * n0 * omega1 * omega1 / kappa) * out.d / (1.0 + out.d * out.d);
  out.gamma_coll = out.j * kappa / delta;
  out.ratio = out.j / (out.gamma_coll + gamma_sc);
  return out;
}

}  // namespace

IsingBudget ising_budget(double n0, double omega1, double kappa, double delta,
                         double eta, double gamma_sc) {
  if (kappa <= 0.0 || delta <= 0.0)
    throw std::invalid_argument("ising_budget: kappa and delta must be positive");
  if (gamma_sc <= 0.0)
    throw std::invalid_argument("ising_budget: Gamma_sc must be positive");

  IsingBudget out = ising_at(n0, omega1, kappa, delta, gamma_sc);

  // Scan delta over six decades around kappa to locate the optimum of the
  // interaction-to-decay ratio (expected near kappa sqrt(eta) / 2).
  const int n_grid = 6001;
  const double center = kappa * std::max(std::sqrt(eta), 1.0);
  for (int i = 0; i < n_grid; ++i) {
    const double trial = center * std::pow(10.0, -3.0 + 6.0 * i / (n_grid - 1.0));
    const IsingBudget at = ising_at(n0, omega1, kappa, trial, gamma_sc);
    if (at.ratio > out.ratio_opt) {
      out.ratio_opt = at.ratio;
      out.delta_opt = trial;
    }
  }
  return out;
}

TwistingGeometry twisting_geometry(double q_twist, double d) {
  if (q_twist < 0.0 || d <= 0.0)
    throw std::invalid_argument("twisting_geometry: require Q >= 0, d > 0");
  TwistingGeometry out;
  const double q2 = q_twist * q_twist;
  out.sigma2_squeezed = 1.0 / (1.0 + q2) + q_twist / ((1.0 + q2) * d);
  // Area grows as 1 + Q/d: unitary twisting is area-preserving, dissipation
  // inflates the ellipse.
  out.sigma2_anti = (1.0 + q_twist / d) / out.sigma2_squeezed;
  out.tilt = 0.5 * std::atan2(2.0, q_twist);
  return out;
}

namespace {

double golden_minimize(double lo, double hi, const auto& f) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while ((b - a) > 1e-6 * std::max(std::abs(a) + std::abs(b), 1e-30)) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SqueezingLimit squeezing_limits(double n_atoms, double eta, double branching_r,
                                SqueezingMode mode, bool cycling) {
  if (n_atoms <= 0.0 || eta <= 0.0 || branching_r < 0.0)
    throw std::invalid_argument("squeezing_limits: require N, eta > 0 and r >= 0");
  (void)mode;
  const double r = cycling ? 0.0 : branching_r;
  const double n_eta = n_atoms * eta;
  // Time in units of 1/Gamma_sc; the exponential accounts for free-space
  // scattering destroying coherence.
  auto xi2 = [&](double t) {
    return (1.0 / (n_eta * t) + r * t) * std::exp(2.0 * t);
  };
  const double t_opt = golden_minimize(1e-9, 5.0, xi2);
  return {xi2(t_opt), t_opt};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("log_log_slope: need matched lists of length >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cqed::budget
