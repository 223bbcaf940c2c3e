#include "cqed/metrology.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cqed/cavity_budget.hpp"

namespace cqed::metrology {

namespace {

const SpinSpace& spin_space_of(const QuantumState& state) {
  const auto* ss = std::get_if<SpinSpace>(&state.space().factor(0));
  if (ss == nullptr || state.space().n_factors() != 1)
    throw std::invalid_argument("expected a state on a single collective-spin space");
  return *ss;
}

/// Exact one-axis-twisting phases at unit chi: psi_m *= e^{-i m^2 t / N}.
QuantumState oat_evolve(const QuantumState& state, const SpinSpace& ss, double t) {
  VectorCd psi = state.amplitudes();
  const double n = ss.atom_number();
  for (int i = 0; i < ss.dim; ++i) {
    const double m = ss.m_of(i);
    psi(i) *= std::exp(Complex(0.0, -m * m * t / n));
  }
  return QuantumState::pure(std::move(psi), state.space());
}

}  // namespace

double wineland_xi2(const QuantumState& state) {
  const SpinSpace& ss = spin_space_of(state);
  const SpinOperators S = spin_operators(ss);
  const double n = ss.atom_number();
  const Eigen::Vector3d mean = mean_spin(state, S);
  if (mean.norm() <= 1e-9 * n)
    throw std::invalid_argument("wineland_xi2: mean spin vanishes");
  const SqueezingEllipse ellipse = squeezing_ellipse(state, S);
  return n * ellipse.v_min / mean.squaredNorm();
}

QfiResult qfi_pure(const QuantumState& state, Axis axis) {
  if (!state.is_pure())
    throw std::invalid_argument("qfi_pure: pure states only");
  const SpinSpace& ss = spin_space_of(state);
  const SpinOperators S = spin_operators(ss);
  const OperatorMatrix& gen = axis == Axis::X ? S.sx : (axis == Axis::Y ? S.sy : S.sz);
  const Moments mom = moments(state, {gen});
  QfiResult out;
  out.fisher = 4.0 * mom.variances[0];
  out.xi2_i = ss.atom_number() / out.fisher;
  return out;
}

std::vector<double> allan_deviation(double xi, double n_atoms, double omega, double t_ramsey,
                                    double t_cycle, const std::vector<double>& tau_grid) {
  if (xi <= 0.0 || n_atoms <= 0.0 || omega <= 0.0 || t_ramsey <= 0.0)
    throw std::invalid_argument("allan_deviation: parameters must be positive");
  if (t_cycle < t_ramsey)
    throw std::invalid_argument("allan_deviation: cycle time shorter than Ramsey time");
  std::vector<double> out;
  const double prefactor = xi / (std::sqrt(n_atoms) * omega * t_ramsey);
  for (double tau : tau_grid) {
    if (tau <= 0.0) throw std::invalid_argument("allan_deviation: tau must be positive");
    out.push_back(prefactor * std::sqrt(t_cycle / tau));
  }
  return out;
}

namespace {

QuantumState run_echo(const EchoProtocol& p, double angle) {
  const SpinSpace ss = make_spin_space(0.5 * p.n_atoms);
  const double t_rev = p.t_rev < 0.0 ? p.t_fwd : p.t_rev;
  QuantumState psi = coherent_spin_state(ss, std::numbers::pi / 2.0, 0.0);
  psi = oat_evolve(psi, ss, p.chi * p.t_fwd);
  psi = rotate(psi, p.axis, angle);
  psi = oat_evolve(psi, ss, -p.chi * t_rev);
  return psi;
}

Eigen::Vector3d echo_mean(const EchoProtocol& p, const SpinOperators& s, double angle) {
  return mean_spin(run_echo(p, angle), s);
}

}  // namespace

EchoResult echo_protocol(const EchoProtocol& p) {
  if (p.n_atoms < 1 || p.t_fwd < 0.0)
    throw std::invalid_argument("echo_protocol: need N >= 1 and t_fwd >= 0");
  const SpinSpace ss = make_spin_space(0.5 * p.n_atoms);
  const SpinOperators S = spin_operators(ss);
  const double n = ss.atom_number();

  EchoResult out;
  out.final_state = run_echo(p, p.angle);

  const QuantumState unkicked = run_echo(p, 0.0);
  out.echo_fidelity = unkicked.fidelity(coherent_spin_state(ss, std::numbers::pi / 2.0, 0.0));

  // Richardson-extrapolated symmetric difference of the mean-spin response.
  const double h = 1e-4;
  const Eigen::Vector3d d_h =
      (echo_mean(p, S, h) - echo_mean(p, S, -h)) / (2.0 * h);
  const Eigen::Vector3d d_h2 =
      (echo_mean(p, S, h / 2.0) - echo_mean(p, S, -h / 2.0)) / h;
  const Eigen::Vector3d deriv = (4.0 * d_h2 - d_h) / 3.0;

  out.gain = deriv.norm() / (0.5 * n);
  if (deriv.norm() > 1e-12) {
    const Eigen::Vector3d u = deriv.normalized();
    const Moments mom =
        moments(unkicked, {S.sx.scaled(u.x()) + S.sy.scaled(u.y()) + S.sz.scaled(u.z())});
    const double noise = std::sqrt(std::max(mom.variances[0], 0.0));
    out.dphi_min = noise / deriv.norm();
    out.xi2_echo = n * out.dphi_min * out.dphi_min;
  }
  return out;
}

namespace {

double oat_xi2_at(const SpinSpace& ss, const QuantumState& css, double t) {
  // Over-twisted states can wrap around the sphere until the mean spin
  // vanishes; treat those points as arbitrarily bad rather than failing.
  try {
    return wineland_xi2(oat_evolve(css, ss, t));
  } catch (const std::invalid_argument&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

OatOptimum oat_optimum(int n_atoms) {
  if (n_atoms < 4) throw std::invalid_argument("oat_optimum: need N >= 4");
  const SpinSpace ss = make_spin_space(0.5 * n_atoms);
  const QuantumState css = coherent_spin_state(ss, std::numbers::pi / 2.0, 0.0);
  // Phases advance as m^2 t / N, so the optimal twist time grows as N^{1/3}.
  const double scale = std::pow(static_cast<double>(n_atoms), 1.0 / 3.0);

  // Coarse log grid, then golden-section refinement around the best point.
  double best_t = scale, best_xi2 = oat_xi2_at(ss, css, scale);
  for (int k = 0; k < 120; ++k) {
    const double t = scale * std::pow(10.0, -1.5 + 2.5 * k / 119.0);
    const double xi2 = oat_xi2_at(ss, css, t);
    if (xi2 < best_xi2) { best_xi2 = xi2; best_t = t; }
  }
  double a = best_t / 1.6, b = best_t * 1.6;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = oat_xi2_at(ss, css, c), fd = oat_xi2_at(ss, css, d);
  while ((b - a) > 1e-8 * b) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - inv_phi * (b - a); fc = oat_xi2_at(ss, css, c);
    } else {
      a = c; c = d; fc = fd; d = a + inv_phi * (b - a); fd = oat_xi2_at(ss, css, d);
    }
  }
  const double t_opt = 0.5 * (a + b);
  return {t_opt, oat_xi2_at(ss, css, t_opt)};
}

OatScanResult oat_optimum_scan(const std::vector<int>& n_list) {
  OatScanResult out;
  out.n_list = n_list;
  std::vector<double> ns, xs;
  for (int n : n_list) {
    out.optima.push_back(oat_optimum(n));
    ns.push_back(static_cast<double>(n));
    xs.push_back(out.optima.back().xi2_min);
  }
  out.exponent = budget::log_log_slope(ns, xs);
  return out;
}

}  // namespace cqed::metrology
