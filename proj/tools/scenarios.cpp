#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <vector>

#include "cqed/cavity_budget.hpp"
#include "cqed/cv_gaussian.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/floquet_graphs.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/metrology.hpp"
#include "cqed/qnd.hpp"
#include "cqed/serialize.hpp"
#include "cqed/spin_algebra.hpp"

namespace cqed::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::ordered_json;
using Rows = std::vector<std::vector<double>>;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n > 1 ? lo + (hi - lo) * i / (n - 1.0) : lo);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i)
    v.push_back(n > 1 ? lo * std::pow(hi / lo, i / (n - 1.0)) : lo);
  return v;
}

struct CurveWriter {
  const RunOptions& opt;

  void write(const std::string& name, const std::vector<std::string>& columns,
             const Rows& rows) const {
    if (!opt.write_csv) return;
    const std::filesystem::path path = std::filesystem::path(opt.out_dir) / name;
    serialize::write_file(path.string(), serialize::curve_csv(columns, rows));
  }

  void write_matrix(const std::string& name, const Eigen::MatrixXd& m) const {
    if (!opt.write_csv) return;
    const std::filesystem::path path = std::filesystem::path(opt.out_dir) / name;
    serialize::write_file(path.string(), serialize::matrix_csv(m));
  }
};

ordered_json run_budget(const ScenarioConfig& cfg, const CurveWriter&) {
  budget::CavityGeometry geom{cfg.number("finesse"), cfg.number("waist"),
                              cfg.number("wavelength"), cfg.number("length")};
  const double gamma = cfg.number("gamma");
  const double nbar = cfg.number_or("nbar", 1.0);
  const auto rates = budget::rates_from_geometry(geom, gamma);
  const auto ceiling = budget::phase_shift_ceiling(rates.eta, nbar, rates.g, rates.kappa, gamma);
  return {{"eta", rates.eta},
          {"kappa", rates.kappa},
          {"g", rates.g},
          {"phi1_max", ceiling.phi1_max},
          {"delta_opt", ceiling.delta_opt}};
}

ordered_json run_jc_spectrum(const ScenarioConfig& cfg, const CurveWriter& out) {
  const double g = cfg.number("g");
  const int n = static_cast<int>(cfg.integer("n"));
  const double kappa = cfg.number("kappa");
  const double gamma = cfg.number("gamma");
  const double half = cfg.number_or("half_width", 2.5 * g * std::sqrt(double(n)));
  const int n_points = static_cast<int>(cfg.integer_or("n_points", 2001));
  const auto spec = qnd::vacuum_rabi_spectrum(g, n, kappa, gamma, linspace(-half, half, n_points));
  Rows rows;
  for (std::size_t k = 0; k < spec.omega.size(); ++k)
    rows.push_back({spec.omega[k], spec.transmission[k]});
  out.write("transmission.csv", {"omega", "transmission"}, rows);
  return {{"splitting", spec.splitting},
          {"splitting_expected", 2.0 * g * std::sqrt(double(n))}};
}

ordered_json run_oat(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int n = static_cast<int>(cfg.integer("n"));
  const double chi = cfg.number_or("chi", 1.0);
  const double t_max = cfg.number("t_max");
  const int n_points = static_cast<int>(cfg.integer_or("n_points", 200));

  const SpinSpace ss = make_spin_space(0.5 * n);
  const SpinOperators S = spin_operators(ss);
  const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);

  Rows rows;
  double xi2_min = 1e300, t_opt = 0.0;
  for (double t : linspace(0.0, t_max, n_points)) {
    VectorCd psi = css.amplitudes();
    for (int i = 0; i < ss.dim; ++i) {
      const double m = ss.m_of(i);
      psi(i) *= std::exp(Complex(0.0, -chi * m * m * t / n));
    }
    const QuantumState state = QuantumState::pure(std::move(psi), css.space());
    const SqueezingEllipse e = squeezing_ellipse(state, S);
    const double xi2 = metrology::wineland_xi2(state);
    rows.push_back({t, xi2, e.v_min, e.v_max});
    if (xi2 < xi2_min) { xi2_min = xi2; t_opt = t; }
  }
  out.write("xi2_vs_t.csv", {"t", "xi2", "Vmin", "Vmax"}, rows);
  return {{"xi2_min", xi2_min}, {"t_opt", t_opt}};
}

ordered_json run_qnd_squeeze(const ScenarioConfig& cfg, const CurveWriter& out) {
  const double n = cfg.number("n");
  const double sigma2_m = cfg.number("sigma2_m");
  const double raman_r = cfg.number_or("raman_r", 0.0);
  const double t_max = cfg.number("gamma_sc_t_max");
  const int n_points = static_cast<int>(cfg.integer_or("n_points", 100));

  Rows rows;
  double best_xi2 = 1e300, best_t = 0.0;
  for (double t : linspace(0.0, t_max, n_points)) {
    const auto res = qnd::conditional_squeeze_gaussian(n, sigma2_m, t, raman_r);
    rows.push_back({t, res.xi2, res.var_sz_conditional, res.backaction_var_sy});
    if (res.xi2 < best_xi2) { best_xi2 = res.xi2; best_t = t; }
  }
  out.write("squeeze_vs_t.csv", {"gamma_sc_t", "xi2", "var_conditional", "backaction"}, rows);
  return {{"xi2_best", best_xi2},
          {"gamma_sc_t_best", best_t},
          {"gain", qnd::conditional_squeeze_gaussian(n, sigma2_m, 0.0, raman_r).mean_shift_gain}};
}

ordered_json run_parity_cat(const ScenarioConfig& cfg, const CurveWriter& out) {
  const double alpha = cfg.number("alpha");
  const double phi1 = cfg.number_or("phi1", kPi);
  const int n_max = static_cast<int>(
      cfg.integer_or("n_max", static_cast<long>(std::ceil(alpha * alpha + 6.0 * alpha + 12.0))));
  const auto res = qnd::parity_herald(alpha, phi1, n_max);

  Rows rows;
  for (int k = 0; k <= n_max; ++k)
    rows.push_back({double(k), std::norm(res.even.state.amplitudes()(k)),
                    std::norm(res.odd.state.amplitudes()(k))});
  out.write("cat_weights.csv", {"n", "weight_even", "weight_odd"}, rows);
  return {{"p_even", res.even.probability},
          {"p_odd", res.odd.probability},
          {"parity_even", res.parity_even},
          {"parity_odd", res.parity_odd},
          {"fidelity_even", res.even.fidelity},
          {"fidelity_odd", res.odd.fidelity}};
}

ordered_json run_fock_collapse(const ScenarioConfig& cfg, const CurveWriter& out,
                               std::uint64_t seed) {
  std::vector<double> schedule;
  if (cfg.has("basis_schedule")) schedule = cfg.list("basis_schedule");
  const auto res = qnd::progressive_collapse(cfg.number("alpha"), cfg.number("phi1"),
                                             static_cast<int>(cfg.integer("n_atoms")),
                                             schedule, seed);
  Rows entropy_rows;
  for (std::size_t k = 0; k < res.entropy.size(); ++k)
    entropy_rows.push_back({double(k + 1), res.entropy[k]});
  out.write("entropy.csv", {"atom", "entropy"}, entropy_rows);
  Rows posterior_rows;
  for (std::size_t k = 0; k < res.posterior.size(); ++k)
    posterior_rows.push_back({double(k), res.posterior[k]});
  out.write("posterior.csv", {"n", "probability"}, posterior_rows);
  return {{"hidden_n", res.hidden_n}, {"concentration", res.concentration}};
}

ordered_json run_w_state(const ScenarioConfig& cfg, const CurveWriter&) {
  const auto res = qnd::herald_w_faraday(static_cast<int>(cfg.integer("n")), cfg.number("phi"));
  return {{"fidelity", res.outcome.fidelity},
          {"probability", res.outcome.probability},
          {"bimodality_d", res.bimodality_d},
          {"aliasing_warning", res.aliasing_warning}};
}

ordered_json run_paint(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int n = static_cast<int>(cfg.integer("n"));
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("paint: n must be a positive even atom number");
  const double omega1 = cfg.number("omega1");
  const double kappa = cfg.number("kappa");
  const double duration = cfg.number("duration");
  const int n_samples = static_cast<int>(cfg.integer_or("n_samples", 16));
  const std::string pulse_name = cfg.text("pulse");

  qnd::PulseShape pulse;
  if (pulse_name == "two_pulse") pulse = qnd::PulseShape::two_pulse(duration);
  else if (pulse_name == "circle") pulse = qnd::PulseShape::circle(duration, n_samples);
  else if (pulse_name == "exp_circle")
    pulse = qnd::PulseShape::exp_circle(duration, cfg.number_or("rate", -kappa), n_samples);
  else
    throw std::invalid_argument("paint: unknown pulse '" + pulse_name + "'");

  const SpinSpace ss = make_spin_space(0.5 * n);
  const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
  const QuantumState target = dicke_state(ss, 0.0);
  const auto res = qnd::paint(css, pulse, omega1, kappa, target);

  Rows rows;
  for (int i = 0; i < ss.dim; ++i)
    rows.push_back({ss.m_of(i), std::norm(res.state.amplitudes()(i))});
  out.write("state_weights.csv", {"m", "weight"}, rows);
  return {{"probability", res.probability}, {"fidelity_m0", res.fidelity}};
}

ordered_json run_echo(const ScenarioConfig& cfg, const CurveWriter&) {
  metrology::EchoProtocol p;
  p.n_atoms = static_cast<int>(cfg.integer("n"));
  p.chi = cfg.number_or("chi", 1.0);
  p.t_fwd = cfg.number("t_fwd");
  p.angle = cfg.number_or("angle", 0.0);
  p.t_rev = cfg.number_or("t_rev", -1.0);
  const auto res = metrology::echo_protocol(p);
  return {{"gain", res.gain},
          {"dphi_min", res.dphi_min},
          {"xi2_echo", res.xi2_echo},
          {"echo_fidelity", res.echo_fidelity}};
}

ordered_json run_allan(const ScenarioConfig& cfg, const CurveWriter& out) {
  const auto tau = logspace(cfg.number("tau_min"), cfg.number("tau_max"),
                            static_cast<int>(cfg.integer_or("n_points", 50)));
  const auto sigma = metrology::allan_deviation(cfg.number("xi"), cfg.number("n"),
                                                cfg.number("omega"), cfg.number("t_ramsey"),
                                                cfg.number("t_cycle"), tau);
  Rows rows;
  for (std::size_t k = 0; k < tau.size(); ++k) rows.push_back({tau[k], sigma[k]});
  out.write("allan.csv", {"tau", "sigma"}, rows);
  return {{"sigma_at_tau_min", sigma.front()}, {"sigma_at_tau_max", sigma.back()}};
}

ordered_json run_floquet_graph(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int m = static_cast<int>(cfg.integer("m"));
  const std::string builder = cfg.text("builder");

  floquet::CouplingMatrix cm;
  std::map<int, double> table;
  if (builder == "mobius") {
    const double j_rail = cfg.number_or("j_rail", 1.0);
    const double j_rung = cfg.number_or("j_rung", -1.0);
    cm = floquet::builder_mobius(m, j_rail, j_rung);
    table[1] = j_rail;
    table[m / 2] = j_rung;
  } else if (builder == "tree") {
    cm = floquet::builder_tree(cfg.number_or("s", 0.5), m);
  } else {
    throw std::invalid_argument("floquet_graph: unknown builder '" + builder + "'");
  }
  out.write_matrix("coupling.csv", cm.j);

  ordered_json results{{"max_coupling", cm.j.cwiseAbs().maxCoeff()},
                       {"rotating_wave_valid", cm.rotating_wave_valid}};
  if (!table.empty()) {
    const auto disp = floquet::magnon_dispersion(table, m);
    Rows rows;
    for (std::size_t k = 0; k < disp.k.size(); ++k)
      rows.push_back({disp.k[k], disp.energy[k]});
    out.write("dispersion.csv", {"k", "energy"}, rows);
    results["bandwidth"] =
        *std::max_element(disp.energy.begin(), disp.energy.end()) -
        *std::min_element(disp.energy.begin(), disp.energy.end());
  }
  return results;
}

ordered_json run_quench_geometry(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int m = static_cast<int>(cfg.integer_or("m", 16));
  const double s = cfg.number_or("s", 0.5);
  const double q = cfg.number_or("q", 1.0);
  const double t = cfg.number_or("t", 0.1);

  const auto cm = floquet::builder_tree(s, m);
  const auto quench = floquet::gaussian_quench(cm.j, q, {t});
  Eigen::MatrixXd c = quench.cxx.front();
  out.write_matrix("cxx.csv", c);

  const auto geo = floquet::corr_to_geometry(c);
  out.write_matrix("distance.csv", geo.distance);
  out.write_matrix("embedding.csv", geo.embedding);

  Eigen::MatrixXd c_offdiag = c;
  c_offdiag.diagonal().setZero();
  const auto tree = floquet::coarse_grain_tree(c_offdiag);
  ordered_json merges = ordered_json::array();
  for (const auto& mg : tree.merges)
    merges.push_back({{"left", mg.left}, {"right", mg.right}, {"strength", mg.strength}});

  return {{"unstable", quench.unstable},
          {"instability_rate", quench.instability_rate},
          {"symplectic_defect", quench.symplectic_defect},
          {"stress", geo.stress},
          {"mds_eigenvalues",
           {geo.mds_eigenvalues(0), geo.mds_eigenvalues(1), geo.mds_eigenvalues(2)}},
          {"leaf_order", tree.leaf_order},
          {"merges", merges}};
}

ordered_json run_graph_state(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int m = static_cast<int>(cfg.integer("m"));
  const double r = cfg.number("r");
  const std::string graph = cfg.text("graph");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  if (graph == "cycle") {
    for (int i = 0; i < m; ++i) {
      a(i, (i + 1) % m) = 1.0;
      a((i + 1) % m, i) = 1.0;
    }
  } else if (graph == "epr") {
    if (m != 2) throw std::invalid_argument("graph_state: epr graph requires m = 2");
    a(0, 1) = a(1, 0) = 1.0;
  } else if (graph != "empty") {
    throw std::invalid_argument("graph_state: unknown graph '" + graph + "'");
  }

  const auto state = cv::prepare_graph_state(a, r);
  const auto nulls = cv::nullifier_variances(state, a);
  Rows rows;
  for (std::size_t k = 0; k < nulls.size(); ++k) rows.push_back({double(k), nulls[k]});
  out.write("nullifiers.csv", {"site", "variance"}, rows);

  std::vector<int> half;
  for (int i = 0; i < m / 2; ++i) half.push_back(i);
  ordered_json results{{"physicality_defect", cv::physicality_defect(state)},
                       {"max_nullifier_variance",
                        *std::max_element(nulls.begin(), nulls.end())},
                       {"entropy_half_cut",
                        half.empty() ? 0.0 : cv::entanglement_entropy(state, half)}};
  if (graph == "epr") {
    const auto crit = cv::epr_criterion(state, 0, 1);
    results["v_sum"] = crit.v_sum;
    results["entangled"] = crit.entangled;
  }
  return results;
}

ordered_json run_dicke_meanfield(const ScenarioConfig& cfg, const CurveWriter& out) {
  const int n = static_cast<int>(cfg.integer("n"));
  const double omega0 = cfg.number("omega0");
  const double omega_c = cfg.number("omega_c");
  const double g_max = cfg.number("g_max");
  const int n_points = static_cast<int>(cfg.integer_or("n_points", 80));

  const auto res = dynamics::mean_field_dicke(omega0, omega_c,
                                              linspace(0.0, g_max, n_points), 0.5 * n);
  Rows rows;
  for (std::size_t k = 0; k < res.g_grid.size(); ++k)
    rows.push_back({res.g_grid[k], res.order_parameter[k], res.branches[k].first,
                    res.branches[k].second});
  out.write("order_parameter.csv", {"g", "abs_a", "branch_plus", "branch_minus"}, rows);
  return {{"threshold", res.threshold},
          {"threshold_analytic", std::sqrt(omega0 * omega_c) / (2.0 * std::sqrt(double(n)))},
          {"converged", res.converged}};
}

ordered_json run_sy_build(const ScenarioConfig& cfg, const CurveWriter& out,
                          std::uint64_t seed) {
  const int m = static_cast<int>(cfg.integer("m"));
  const double variance = cfg.number("variance");
  const auto cm = floquet::builder_sachdev_ye(m, variance, seed);
  out.write_matrix("coupling.csv", cm.j);

  double sum2 = 0.0;
  int count = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) { sum2 += cm.j(i, j) * cm.j(i, j); ++count; }
  return {{"empirical_variance", sum2 / count},
          {"expected_variance", variance / m},
          {"max_abs_coupling", cm.j.cwiseAbs().maxCoeff()}};
}

}  // namespace

ordered_json run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  const CurveWriter out{opt};
  if (cfg.scenario == "budget") return run_budget(cfg, out);
  if (cfg.scenario == "jc_spectrum") return run_jc_spectrum(cfg, out);
  if (cfg.scenario == "oat") return run_oat(cfg, out);
  if (cfg.scenario == "qnd_squeeze") return run_qnd_squeeze(cfg, out);
  if (cfg.scenario == "parity_cat") return run_parity_cat(cfg, out);
  if (cfg.scenario == "fock_collapse") return run_fock_collapse(cfg, out, opt.seed);
  if (cfg.scenario == "w_state") return run_w_state(cfg, out);
  if (cfg.scenario == "paint") return run_paint(cfg, out);
  if (cfg.scenario == "echo") return run_echo(cfg, out);
  if (cfg.scenario == "allan") return run_allan(cfg, out);
  if (cfg.scenario == "floquet_graph") return run_floquet_graph(cfg, out);
  if (cfg.scenario == "quench_geometry") return run_quench_geometry(cfg, out);
  if (cfg.scenario == "graph_state") return run_graph_state(cfg, out);
  if (cfg.scenario == "dicke_meanfield") return run_dicke_meanfield(cfg, out);
  if (cfg.scenario == "sy_build") return run_sy_build(cfg, out, opt.seed);
  throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

}  // namespace cqed::cli
