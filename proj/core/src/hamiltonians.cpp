#include "cqed/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cqed::hamiltonians {

namespace {

SparseCd fock_annihilation(int n_max) {
  const int dim = n_max + 1;
  SparseCd a(dim, dim);
  a.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (int n = 1; n < dim; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  a.makeCompressed();
  return a;
}

SparseCd fock_number(int n_max) {
  const int dim = n_max + 1;
  SparseCd n(dim, dim);
  n.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (int k = 1; k < dim; ++k) n.insert(k, k) = static_cast<double>(k);
  n.makeCompressed();
  return n;
}

SparseCd identity_sparse(int dim) {
  SparseCd id(dim, dim);
  id.setIdentity();
  return id;
}

CompositeSpace spin_fock_space(double spin, int n_max) {
  return CompositeSpace({make_spin_space(spin), make_fock_space(n_max)});
}

}  // namespace

OperatorMatrix jaynes_cummings(double g, double delta, int n_max) {
  return tavis_cummings(g, delta, 0.5, n_max);
}

OperatorMatrix tavis_cummings(double g, double delta, double spin, int n_max) {
  const SpinSpace ss = make_spin_space(spin);
  const SpinOperators S = spin_operators(ss);
  const SparseCd a = fock_annihilation(n_max);
  const SparseCd id_f = identity_sparse(n_max + 1);

  SparseCd coupling = kronecker(S.sm.sparse(), SparseCd(a.adjoint()));
  SparseCd h = Complex(g) * (coupling + SparseCd(coupling.adjoint())) +
               Complex(delta) * kronecker(S.sz.sparse(), id_f);
  return OperatorMatrix(h, spin_fock_space(spin, n_max), true);
}

OperatorMatrix dispersive_single(double omega1, int n_max) {
  OperatorMatrix h = dispersive_collective(omega1, 0.5, n_max);
  return h.scaled(2.0);  // sigma_z = 2 s_z at spin 1/2
}

OperatorMatrix dispersive_collective(double omega1, double spin, int n_max) {
  const SpinOperators S = spin_operators(make_spin_space(spin));
  SparseCd h = Complex(omega1) * kronecker(S.sz.sparse(), fock_number(n_max));
  return OperatorMatrix(h, spin_fock_space(spin, n_max), true);
}

OperatorMatrix one_axis_twisting(double chi, double spin) {
  const SpinSpace ss = make_spin_space(spin);
  if (ss.atom_number() < 1) throw std::invalid_argument("one_axis_twisting: need S >= 1/2");
  const SpinOperators S = spin_operators(ss);
  SparseCd sz = S.sz.sparse();
  SparseCd h = Complex(chi / ss.atom_number()) * SparseCd(sz * sz);
  return OperatorMatrix(h, CompositeSpace::single(ss), true);
}

DrivenIsingResult driven_ising(double n0, double omega1, double kappa, double delta,
                               double spin) {
  if (kappa <= 0.0) throw std::invalid_argument("driven_ising: kappa must be positive");
  const SpinSpace ss = make_spin_space(spin);
  const SpinOperators S = spin_operators(ss);
  const double d = 2.0 * delta / kappa;
  const double j = (4.0 * n0 * omega1 * omega1 / kappa) * d / (1.0 + d * d);
  const double field = n0 * omega1;

  SparseCd sz = S.sz.sparse();
  SparseCd h = Complex(field) * sz + Complex(j) * SparseCd(sz * sz);
  return {OperatorMatrix(h, CompositeSpace::single(ss), true), j, field, d};
}

OperatorMatrix xy_raman(double chi_plus, double chi_minus, double spin) {
  const SpinSpace ss = make_spin_space(spin);
  const SpinOperators S = spin_operators(ss);
  const double n = ss.atom_number();
  SparseCd sp = S.sp.sparse();
  SparseCd sm = S.sm.sparse();
  SparseCd h = (Complex(chi_minus) * SparseCd(sp * sm) +
                Complex(chi_plus) * SparseCd(sm * sp)) /
               Complex(n);
  return OperatorMatrix(h, CompositeSpace::single(ss), true);
}

OperatorMatrix xxz_collective(double j_xy, double j_z, double spin) {
  const SpinSpace ss = make_spin_space(spin);
  const SpinOperators S = spin_operators(ss);
  SparseCd sx = S.sx.sparse();
  SparseCd sy = S.sy.sparse();
  SparseCd sz = S.sz.sparse();
  SparseCd h = Complex(j_xy) * SparseCd(SparseCd(sx * sx) + SparseCd(sy * sy)) +
               Complex(j_z) * SparseCd(sz * sz);
  return OperatorMatrix(h, CompositeSpace::single(ss), true);
}

namespace {

// Weighted collective components F_alpha = sum_j c_j f_j^alpha on the
// tensor product of identical per-site spins.
struct SiteSums {
  SparseCd fx, fy, fz;
  CompositeSpace space;
};

SiteSums weighted_sums(const std::vector<double>& weights, double site_spin) {
  const std::size_t n_sites = weights.size();
  if (n_sites == 0) throw std::invalid_argument("xxz: empty site list");
  const SpinSpace local = make_spin_space(site_spin);
  double total_dim = 1.0;
  for (std::size_t j = 0; j < n_sites; ++j) total_dim *= local.dim;
  if (total_dim > 4096.0)
    throw std::invalid_argument("xxz: per-site representation exceeds dimension 4096");

  std::vector<SpaceFactor> factors(n_sites, SpaceFactor(local));
  CompositeSpace space(std::move(factors));
  const SpinOperators s = spin_operators(local);

  SiteSums out;
  out.space = space;
  out.fx = SparseCd(space.dim(), space.dim());
  out.fy = out.fx;
  out.fz = out.fx;
  for (std::size_t j = 0; j < n_sites; ++j) {
    out.fx = out.fx + Complex(weights[j]) * OperatorMatrix::embed(s.sx, j, space).sparse();
    out.fy = out.fy + Complex(weights[j]) * OperatorMatrix::embed(s.sy, j, space).sparse();
    out.fz = out.fz + Complex(weights[j]) * OperatorMatrix::embed(s.sz, j, space).sparse();
  }
  return out;
}

}  // namespace

OperatorMatrix xxz_weighted(double j_xy, double j_z, const std::vector<double>& weights,
                            double site_spin) {
  SiteSums f = weighted_sums(weights, site_spin);
  SparseCd h = Complex(j_xy) * SparseCd(SparseCd(f.fx * f.fx) + SparseCd(f.fy * f.fy)) +
               Complex(j_z) * SparseCd(f.fz * f.fz);
  return OperatorMatrix(h, f.space, true);
}

OperatorMatrix xy_inhomogeneous_field(double j_xy, const std::vector<double>& fields) {
  const std::vector<double> uniform(fields.size(), 1.0);
  SiteSums f = weighted_sums(uniform, 0.5);
  SparseCd h = Complex(j_xy) * SparseCd(SparseCd(f.fx * f.fx) + SparseCd(f.fy * f.fy));
  const SpinOperators s = spin_operators(make_spin_space(0.5));
  for (std::size_t j = 0; j < fields.size(); ++j)
    h = h + Complex(fields[j]) * OperatorMatrix::embed(s.sz, j, f.space).sparse();
  return OperatorMatrix(h, f.space, true);
}

OperatorMatrix dicke(double omega0, double omega_c, double g_coupling, double spin,
                     int n_max) {
  const SpinSpace ss = make_spin_space(spin);
  const SpinOperators S = spin_operators(ss);
  const SparseCd a = fock_annihilation(n_max);
  const SparseCd id_f = identity_sparse(n_max + 1);
  const SparseCd id_s = identity_sparse(ss.dim);

  SparseCd x_field = a + SparseCd(a.adjoint());
  SparseCd x_spin = S.sp.sparse() + S.sm.sparse();
  SparseCd h = Complex(omega0) * kronecker(S.sz.sparse(), id_f) +
               Complex(omega_c) * kronecker(id_s, fock_number(n_max)) +
               Complex(g_coupling) * kronecker(x_spin, x_field);
  return OperatorMatrix(h, spin_fock_space(spin, n_max), true);
}

OperatorMatrix dicke_parity(double spin, int n_max) {
  const SpinSpace ss = make_spin_space(spin);
  const CompositeSpace space = spin_fock_space(spin, n_max);
  const int dim_f = n_max + 1;
  SparseCd pi(space.dim(), space.dim());
  pi.reserve(Eigen::VectorXi::Constant(space.dim(), 1));
  // Diagonal with exp(i pi (n + m + S)); m + S is an integer so every entry
  // is +/- 1 up to rounding.
  for (int i = 0; i < ss.dim; ++i) {
    const double excitation_spin = ss.m_of(i) + ss.spin;
    for (int n = 0; n < dim_f; ++n) {
      const int row = i * dim_f + n;
      const double phase = std::numbers::pi * (n + excitation_spin);
      pi.insert(row, row) = std::round(std::cos(phase));
    }
  }
  pi.makeCompressed();
  return OperatorMatrix(pi, space, true);
}

OperatorMatrix faraday(double omega1, double spin, int n_max_per_polarization) {
  const SpinSpace ss = make_spin_space(spin);
  const int n_max = n_max_per_polarization;
  CompositeSpace space(
      {make_spin_space(spin), make_fock_space(n_max), make_fock_space(n_max)});
  const SparseCd num = fock_number(n_max);
  const SparseCd id_f = identity_sparse(n_max + 1);
  const SpinOperators S = spin_operators(ss);

  SparseCd n_diff = kronecker(num, id_f) - kronecker(id_f, num);
  SparseCd h = Complex(omega1) * kronecker(S.sz.sparse(), n_diff);
  return OperatorMatrix(h, space, true);
}

double fock_tail_population(const QuantumState& state, std::size_t fock_factor) {
  const CompositeSpace& space = state.space();
  const auto* fock = std::get_if<FockSpace>(&space.factor(fock_factor));
  if (fock == nullptr)
    throw std::invalid_argument("fock_tail_population: factor is not a Fock space");

  // Stride pattern of the flattened index: factors left of `fock_factor`
  // vary slower, factors right of it faster.
  int inner = 1;
  for (std::size_t k = fock_factor + 1; k < space.n_factors(); ++k)
    inner *= space.factor_dim(k);
  int outer = 1;
  for (std::size_t k = 0; k < fock_factor; ++k) outer *= space.factor_dim(k);

  const MatrixCd rho = state.density_matrix();
  double tail = 0.0;
  const int top = fock->n_max;
  for (int o = 0; o < outer; ++o)
    for (int i = 0; i < inner; ++i) {
      const int idx = (o * fock->dim + top) * inner + i;
      tail += rho(idx, idx).real();
    }
  return tail;
}

}  // namespace cqed::hamiltonians
