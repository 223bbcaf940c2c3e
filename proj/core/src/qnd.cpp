#include "cqed/qnd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cqed/spin_algebra.hpp"

namespace cqed::qnd {

namespace {

constexpr double kPi = std::numbers::pi;

/// Coherent-state amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!).
VectorCd coherent_fock_amplitudes(Complex alpha, int n_max) {
  VectorCd c(n_max + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  return c;
}

}  // namespace

ParityHeraldResult parity_herald(double alpha, double phi1, int n_max) {
  const double needed = alpha * alpha + 6.0 * std::abs(alpha) + 10.0;
  if (n_max < needed)
    throw std::invalid_argument("parity_herald: Fock cutoff below the tail bound");
  const VectorCd c = coherent_fock_amplitudes(alpha, n_max);
  const double tail = std::norm(c(n_max));
  if (tail > 1e-8) throw std::invalid_argument("parity_herald: Fock tail too large");

  const CompositeSpace field_space = CompositeSpace::single(make_fock_space(n_max));
  VectorCd even(n_max + 1), odd(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const Complex up = std::exp(Complex(0.0, -0.5 * phi1 * n));
    const Complex dn = std::exp(Complex(0.0, +0.5 * phi1 * n));
    even(n) = c(n) * 0.5 * (up + dn);
    odd(n) = c(n) * 0.5 * (up - dn);
  }
  const double p_even = even.squaredNorm();
  const double p_odd = odd.squaredNorm();

  // Cat targets (|i alpha> +/- |-i alpha>)/norm, exact for Phi1 = pi.
  const VectorCd plus = coherent_fock_amplitudes(Complex(0.0, alpha), n_max);
  const VectorCd minus = coherent_fock_amplitudes(Complex(0.0, -alpha), n_max);
  VectorCd cat_even = plus + minus;
  VectorCd cat_odd = plus - minus;

  ParityHeraldResult out;
  auto fill = [&](HeraldedOutcome& o, const std::string& label, const VectorCd& raw,
                  double p, const VectorCd& cat) {
    o.label = label;
    o.probability = p;
    VectorCd psi = p > 0.0 ? VectorCd(raw / std::sqrt(p)) : raw;
    if (cat.norm() > 1e-12 && p > 0.0)
      o.fidelity = std::norm(cat.normalized().dot(psi));
    o.state = QuantumState::pure(std::move(psi), field_space);
  };
  fill(out.even, "even", even, p_even, cat_even);
  fill(out.odd, "odd", odd, p_odd, cat_odd);

  auto parity_of = [&](const HeraldedOutcome& o) {
    double par = 0.0;
    const VectorCd& psi = o.state.amplitudes();
    for (int n = 0; n <= n_max; ++n) par += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(psi(n));
    return par;
  };
  out.parity_even = parity_of(out.even);
  out.parity_odd = parity_of(out.odd);
  return out;
}

ProgressiveCollapseResult progressive_collapse(double alpha, double phi1, int n_atoms,
                                               std::vector<double> basis_schedule,
                                               std::uint64_t seed) {
  if (phi1 <= 0.0 || phi1 > kPi)
    throw std::invalid_argument("progressive_collapse: Phi1 must lie in (0, pi]");
  if (basis_schedule.empty())
    basis_schedule = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};

  const int n_max = static_cast<int>(std::ceil(alpha * alpha + 6.0 * alpha + 10.0));
  std::vector<double> prior(n_max + 1);
  {
    const VectorCd c = coherent_fock_amplitudes(alpha, n_max);
    for (int n = 0; n <= n_max; ++n) prior[n] = std::norm(c(n));
    double z = 0.0;
    for (double p : prior) z += p;
    for (double& p : prior) p /= z;
  }

  std::mt19937_64 rng(seed);
  ProgressiveCollapseResult out;
  out.hidden_n = std::discrete_distribution<int>(prior.begin(), prior.end())(rng);
  out.posterior = prior;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto p_plus = [&](int n, double beta) {
    return 0.5 * (1.0 + std::cos(phi1 * n + beta));
  };
  for (int k = 0; k < n_atoms; ++k) {
    const double beta = basis_schedule[k % basis_schedule.size()];
    const bool plus = unit(rng) < p_plus(out.hidden_n, beta);
    out.outcomes.push_back(plus ? +1 : -1);
    double z = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const double like = plus ? p_plus(n, beta) : 1.0 - p_plus(n, beta);
      out.posterior[n] *= like;
      z += out.posterior[n];
    }
    if (z <= 0.0) throw std::runtime_error("progressive_collapse: posterior vanished");
    double entropy = 0.0;
    for (double& p : out.posterior) {
      p /= z;
      if (p > 0.0) entropy -= p * std::log(p);
    }
    out.entropy.push_back(entropy);
  }
  out.concentration = *std::max_element(out.posterior.begin(), out.posterior.end());
  return out;
}

ConditionalSqueezeResult conditional_squeeze_gaussian(double n_atoms, double sigma2_m,
                                                      double gamma_sc_t, double raman_r) {
  if (sigma2_m <= 0.0)
    throw std::invalid_argument("conditional_squeeze_gaussian: sigma2_m must be positive");
  ConditionalSqueezeResult out;
  // Gaussian posterior over S_z, variances in units of the CSS value N/4.
  out.var_sz_conditional = sigma2_m / (1.0 + sigma2_m);
  out.mean_shift_gain = 1.0 / (1.0 + sigma2_m);
  const double contrast = std::exp(-gamma_sc_t);
  out.backaction_var_sy = contrast * contrast / out.var_sz_conditional;
  out.xi2 = (out.var_sz_conditional + raman_r * gamma_sc_t) / (contrast * contrast);
  (void)n_atoms;
  return out;
}

WHeraldResult herald_w_faraday(int n_atoms, double phi) {
  if (n_atoms < 2 || phi <= 0.0)
    throw std::invalid_argument("herald_w_faraday: need N >= 2 and Phi > 0");
  const SpinSpace ss = make_spin_space(0.5 * n_atoms);
  const SpinOperators S = spin_operators(ss);
  QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);  // along +x

  // Kraus K = sin(Phi S_z), diagonal in the z Dicke basis.
  VectorCd psi = css.amplitudes();
  for (int i = 0; i < ss.dim; ++i) psi(i) *= std::sin(phi * ss.m_of(i));

  WHeraldResult out;
  out.aliasing_warning = phi * ss.spin > kPi / 2.0;
  out.outcome.label = "dark_port_click";
  out.outcome.probability = psi.squaredNorm();
  psi /= std::sqrt(out.outcome.probability);

  // Target: single-excitation Dicke state along x, i.e. |S, S-1> rotated
  // from z to x.
  QuantumState w_target = rotate(dicke_state(ss, ss.spin - 1.0), Axis::Y, kPi / 2.0);
  out.outcome.fidelity = std::norm(w_target.amplitudes().dot(psi));
  out.outcome.state = QuantumState::pure(psi, css.space());

  // Ashman's D between the m > 0 and m < 0 lobes of the S_z distribution.
  double w1 = 0.0, w2 = 0.0, m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
  const VectorCd& post = out.outcome.state.amplitudes();
  for (int i = 0; i < ss.dim; ++i) {
    const double m = ss.m_of(i);
    const double p = std::norm(post(i));
    if (m > 0) { w1 += p; m1 += p * m; } else if (m < 0) { w2 += p; m2 += p * m; }
  }
  if (w1 > 0) m1 /= w1;
  if (w2 > 0) m2 /= w2;
  for (int i = 0; i < ss.dim; ++i) {
    const double m = ss.m_of(i);
    const double p = std::norm(post(i));
    if (m > 0) v1 += p * (m - m1) * (m - m1);
    else if (m < 0) v2 += p * (m - m2) * (m - m2);
  }
  if (w1 > 0) v1 /= w1;
  if (w2 > 0) v2 /= w2;
  const double pooled = std::sqrt(0.5 * (v1 + v2));
  out.bimodality_d = pooled > 1e-12 ? std::abs(m1 - m2) / pooled : 0.0;
  return out;
}

PulseShape PulseShape::two_pulse(double dt) {
  return {{{0.0, Complex(1.0)}, {dt, Complex(1.0)}}};
}

PulseShape PulseShape::circle(double duration, int n_samples) {
  PulseShape p;
  for (int k = 0; k < n_samples; ++k)
    p.samples.emplace_back(duration * k / n_samples, Complex(1.0));
  return p;
}

PulseShape PulseShape::exp_circle(double duration, double rate, int n_samples) {
  PulseShape p;
  for (int k = 0; k < n_samples; ++k) {
    const double t = duration * k / n_samples;
    p.samples.emplace_back(t, Complex(std::exp(0.5 * rate * t)));
  }
  return p;
}

HeraldedOutcome paint(const QuantumState& initial, const PulseShape& pulse,
                      double omega1, double kappa, const QuantumState& target) {
  if (pulse.samples.empty()) throw std::invalid_argument("paint: empty pulse");
  const auto* ss = std::get_if<SpinSpace>(&initial.space().factor(0));
  if (ss == nullptr || initial.space().n_factors() != 1)
    throw std::invalid_argument("paint: initial state must live on a single spin space");
  double total_weight = 0.0;
  double t_end = pulse.samples.front().first;
  for (const auto& [t, f] : pulse.samples) {
    if (t < t_end) throw std::invalid_argument("paint: times must be non-decreasing");
    t_end = t;
    total_weight += std::abs(f);
  }
  if (total_weight <= 0.0) throw std::invalid_argument("paint: zero pulse weight");

  // Diagonal Kraus kernel in the Dicke basis, detection at the window end.
  VectorCd kernel = VectorCd::Zero(ss->dim);
  for (int i = 0; i < ss->dim; ++i) {
    const double m = ss->m_of(i);
    for (const auto& [t, f] : pulse.samples)
      kernel(i) += f * std::exp(-0.5 * kappa * (t_end - t)) *
                   std::exp(Complex(0.0, -omega1 * t * m));
  }
  const double op_norm = kernel.cwiseAbs().maxCoeff();
  kernel /= op_norm;

  VectorCd psi = initial.amplitudes().cwiseProduct(kernel);
  HeraldedOutcome out;
  out.label = "paint_click";
  out.probability = psi.squaredNorm();
  psi /= std::sqrt(out.probability);
  out.fidelity = std::norm(target.amplitudes().normalized().dot(psi));
  out.state = QuantumState::pure(std::move(psi), initial.space());
  return out;
}

TransmissionSpectrum vacuum_rabi_spectrum(double g, int n_atoms, double kappa,
                                          double gamma_atom,
                                          const std::vector<double>& probe_grid) {
  TransmissionSpectrum out;
  out.omega = probe_grid;
  for (double w : probe_grid) {
    const Complex denom = Complex(kappa / 2.0, -w) +
                          g * g * n_atoms / Complex(gamma_atom / 2.0, -w);
    out.transmission.push_back(std::norm(Complex(kappa / 2.0) / denom));
  }
  // Locate the two tallest local maxima.
  std::vector<std::pair<double, double>> peaks;  // (height, omega)
  for (std::size_t i = 1; i + 1 < out.transmission.size(); ++i)
    if (out.transmission[i] >= out.transmission[i - 1] &&
        out.transmission[i] > out.transmission[i + 1])
      peaks.emplace_back(out.transmission[i], out.omega[i]);
  std::sort(peaks.rbegin(), peaks.rend());
  if (peaks.size() >= 2) out.splitting = std::abs(peaks[0].second - peaks[1].second);
  return out;
}

}  // namespace cqed::qnd
