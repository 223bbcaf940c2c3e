#include "cqed/floquet_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace cqed::floquet {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd zero_matrix(int m) { return Eigen::MatrixXd::Zero(m, m); }

int pair_distance(int i, int j, int m, Boundary boundary) {
  const int d = std::abs(i - j);
  return boundary == Boundary::Periodic ? std::min(d, m - d) : d;
}

}  // namespace

CouplingMatrix spectrum_to_couplings(const ModulationSpectrum& spec, int m_sites,
                                     Boundary boundary) {
  if (m_sites < 2) throw std::invalid_argument("spectrum_to_couplings: need M >= 2");
  if (spec.omega_b <= 0.0)
    throw std::invalid_argument("spectrum_to_couplings: omega_B must be positive");
  std::map<int, double> j_of_r;
  double max_amp = 0.0;
  for (const Tone& tone : spec.tones) {
    const int limit = boundary == Boundary::Open ? m_sites - 1 : m_sites / 2;
    if (tone.distance < 1 || tone.distance > limit)
      throw std::invalid_argument("spectrum_to_couplings: tone distance out of range");
    if (!j_of_r.emplace(tone.distance, tone.amplitude * std::cos(tone.phase)).second)
      throw std::invalid_argument("spectrum_to_couplings: duplicate tone distance");
    max_amp = std::max(max_amp, tone.amplitude);
  }

  CouplingMatrix out;
  out.boundary = boundary;
  out.rotating_wave_valid = max_amp < spec.omega_b / 10.0;
  out.j = zero_matrix(m_sites);
  for (int i = 0; i < m_sites; ++i)
    for (int j = i + 1; j < m_sites; ++j) {
      const auto it = j_of_r.find(pair_distance(i, j, m_sites, boundary));
      if (it != j_of_r.end()) out.j(i, j) = out.j(j, i) = it->second;
    }
  return out;
}

ModulationSpectrum couplings_to_spectrum(const std::map<int, double>& j_of_r,
                                         double omega_b) {
  ModulationSpectrum out;
  out.omega_b = omega_b;
  for (const auto& [r, j] : j_of_r) {
    if (j == 0.0) continue;
    out.tones.push_back({r, std::abs(j), j < 0.0 ? kPi : 0.0});
  }
  return out;
}

CouplingMatrix builder_mobius(int m_sites, double j_rail, double j_rung) {
  if (m_sites < 4 || m_sites % 2 != 0)
    throw std::invalid_argument("builder_mobius: M must be even and >= 4");
  ModulationSpectrum spec;
  spec.omega_b = 1.0;
  spec.tones.push_back({1, std::abs(j_rail), j_rail < 0.0 ? kPi : 0.0});
  spec.tones.push_back({m_sites / 2, std::abs(j_rung), j_rung < 0.0 ? kPi : 0.0});
  CouplingMatrix out = spectrum_to_couplings(spec, m_sites, Boundary::Periodic);
  out.rotating_wave_valid = true;  // amplitudes here are couplings, not drive tones
  return out;
}

CouplingMatrix builder_tree(double s_exponent, int m_sites) {
  if (m_sites < 2) throw std::invalid_argument("builder_tree: need M >= 2");
  CouplingMatrix out;
  out.j = zero_matrix(m_sites);
  for (int i = 0; i < m_sites; ++i)
    for (int j = i + 1; j < m_sites; ++j) {
      const int r = j - i;
      if ((r & (r - 1)) == 0)  // power of two
        out.j(i, j) = out.j(j, i) = std::pow(static_cast<double>(r), s_exponent);
    }
  return out;
}

SeparableCoupling builder_separable(const Eigen::MatrixXcd& profiles) {
  if (profiles.rows() < 1 || profiles.cols() < 2)
    throw std::invalid_argument("builder_separable: need at least one profile over >= 2 sites");
  SeparableCoupling out;
  const Eigen::MatrixXcd gram = profiles.adjoint() * profiles;  // sum_mu G*_i G_j
  out.coupling.j = gram.real();
  out.coupling.j.diagonal().setZero();
  out.coupling.j = 0.5 * (out.coupling.j + out.coupling.j.transpose().eval());

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(profiles);
  const double cutoff = 1e-10 * svd.singularValues().maxCoeff();
  out.rank = static_cast<int>((svd.singularValues().array() > cutoff).count());
  return out;
}

CouplingMatrix builder_sachdev_ye(int m_sites, double variance, std::uint64_t seed) {
  if (m_sites < 2) throw std::invalid_argument("builder_sachdev_ye: need M >= 2");
  if (variance < 0.0) throw std::invalid_argument("builder_sachdev_ye: negative variance");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / m_sites));
  CouplingMatrix out;
  out.j = zero_matrix(m_sites);
  for (int i = 0; i < m_sites; ++i)
    for (int j = i + 1; j < m_sites; ++j) out.j(i, j) = out.j(j, i) = gauss(rng);
  return out;
}

MagnonDispersion magnon_dispersion(const std::map<int, double>& j_of_r, int m_sites) {
  if (m_sites < 2) throw std::invalid_argument("magnon_dispersion: need M >= 2");
  MagnonDispersion out;
  for (int n = 0; n < m_sites; ++n) {
    const double k = 2.0 * kPi * n / m_sites;
    double e = 0.0;
    for (const auto& [r, j] : j_of_r) e += 2.0 * j * std::cos(k * r);
    out.k.push_back(k);
    out.energy.push_back(e);
  }
  return out;
}

QuenchResult gaussian_quench(const Eigen::MatrixXd& j, double q,
                             const std::vector<double>& t_grid) {
  const int m = static_cast<int>(j.rows());
  if (j.cols() != m) throw std::invalid_argument("gaussian_quench: J must be square");
  if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gaussian_quench: J must be symmetric");

  // Quadratic form H = z^T M z / 2 in z = (x, p) with the x block carrying
  // the pairing term; flow generator is Omega M.
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  big.topLeftCorner(m, m) = q * Eigen::MatrixXd::Identity(m, m) + 2.0 * j;
  big.bottomRightCorner(m, m) = q * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  omega.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  omega.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd generator = omega * big;

  QuenchResult out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  const double lambda_min = es.eigenvalues().minCoeff();
  const double indicator = q * (q + 2.0 * lambda_min);
  out.unstable = indicator < 0.0;
  out.instability_rate = std::sqrt(std::abs(indicator));

  const Eigen::MatrixXd sigma0 = 0.5 * Eigen::MatrixXd::Identity(2 * m, 2 * m);
  for (double t : t_grid) {
    const Eigen::MatrixXd s = (generator * t).exp();
    out.symplectic_defect = std::max(
        out.symplectic_defect,
        (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff());
    Eigen::MatrixXd sigma = s * sigma0 * s.transpose();
    sigma = 0.5 * (sigma + sigma.transpose().eval());
    out.times.push_back(t);
    out.cxx.push_back(sigma.topLeftCorner(m, m));
    out.sigma.push_back(std::move(sigma));
  }
  return out;
}

GeometryReconstruction corr_to_geometry(const Eigen::MatrixXd& c) {
  const int m = static_cast<int>(c.rows());
  if (c.cols() != m || m < 2) throw std::invalid_argument("corr_to_geometry: bad shape");
  double c0 = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) c0 = std::max(c0, std::abs(c(i, j)));
  if (c0 <= 0.0)
    throw std::invalid_argument("corr_to_geometry: all off-diagonal correlations vanish");

  GeometryReconstruction out;
  out.distance = zero_matrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double ratio = std::abs(c(i, j)) / c0;
      out.distance(i, j) = ratio > 0.0 ? std::sqrt(std::max(0.0, -std::log(ratio)))
                                       : std::sqrt(-std::log(1e-300));
    }

  // Classical MDS: double-center the squared distances.
  const Eigen::MatrixXd d2 = out.distance.array().square();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  const Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);

  out.embedding = Eigen::MatrixXd::Zero(m, 3);
  for (int k = 0; k < 3 && k < m; ++k) {
    const int idx = m - 1 - k;  // eigenvalues ascending
    const double lambda = std::max(0.0, es.eigenvalues()(idx));
    out.mds_eigenvalues(k) = lambda;
    if (lambda > 0.0) out.embedding.col(k) = std::sqrt(lambda) * es.eigenvectors().col(idx);
  }

  double num = 0.0, den = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double fit = (out.embedding.row(i) - out.embedding.row(j)).norm();
      num += (out.distance(i, j) - fit) * (out.distance(i, j) - fit);
      den += out.distance(i, j) * out.distance(i, j);
    }
  out.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return out;
}

namespace {

void traverse(const std::vector<CoarseTree::Merge>& merges, int node, int m,
              std::vector<int>& order) {
  if (node < m) {
    order.push_back(node);
    return;
  }
  const CoarseTree::Merge& mg = merges[node - m];
  traverse(merges, mg.left, m, order);
  traverse(merges, mg.right, m, order);
}

}  // namespace

CoarseTree coarse_grain_tree(const Eigen::MatrixXd& c) {
  const int m = static_cast<int>(c.rows());
  if (c.cols() != m || m < 2) throw std::invalid_argument("coarse_grain_tree: need M >= 2");

  struct Cluster {
    int id;
    std::vector<int> leaves;
  };
  std::vector<Cluster> active;
  for (int i = 0; i < m; ++i) active.push_back({i, {i}});

  CoarseTree out;
  int next_id = m;
  while (active.size() > 1) {
    double best = -1.0;
    std::size_t bi = 0, bj = 1;
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        double sum = 0.0;
        for (int i : active[a].leaves)
          for (int j : active[b].leaves) sum += std::abs(c(i, j));
        const double mean =
            sum / (active[a].leaves.size() * active[b].leaves.size());
        if (mean > best + 1e-15) {  // strict improvement keeps lowest-index ties
          best = mean;
          bi = a;
          bj = b;
        }
      }
    // Canonical child order: the cluster holding the smaller leaf goes left,
    // so the traversal order is independent of the merge bookkeeping.
    const int min_i = *std::min_element(active[bi].leaves.begin(), active[bi].leaves.end());
    const int min_j = *std::min_element(active[bj].leaves.begin(), active[bj].leaves.end());
    if (min_j < min_i) std::swap(bi, bj);
    Cluster merged;
    merged.id = next_id++;
    merged.leaves = active[bi].leaves;
    merged.leaves.insert(merged.leaves.end(), active[bj].leaves.begin(),
                         active[bj].leaves.end());
    out.merges.push_back({active[bi].id, active[bj].id, best});
    active.erase(active.begin() + std::max(bi, bj));
    active.erase(active.begin() + std::min(bi, bj));
    active.push_back(std::move(merged));
  }
  traverse(out.merges, active.front().id, m, out.leaf_order);
  return out;
}

}  // namespace cqed::floquet
