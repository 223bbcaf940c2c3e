#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace cqed::floquet {

enum class Boundary { Open, Periodic };

struct Tone {
  int distance = 1;      // r >= 1
  double amplitude = 0.0;
  double phase = 0.0;    // 0 or pi select the coupling sign
};

struct ModulationSpectrum {
  double omega_b = 1.0;  // gradient, rad/s
  std::vector<Tone> tones;
};

struct CouplingMatrix {
  Eigen::MatrixXd j;  // symmetric, zero diagonal
  Boundary boundary = Boundary::Open;
  bool rotating_wave_valid = true;  // max amplitude < omega_b / 10
};

/// J(r) = A_r e^{i phi_r} per tone, assembled as J_ij = Re[J(|i-j|)] with
/// the boundary rule (periodic distance = min(|i-j|, M-|i-j|)).
CouplingMatrix spectrum_to_couplings(const ModulationSpectrum& spec, int m_sites,
                                     Boundary boundary);

/// Inverse map: one tone per nonzero distance.  Round-trips exactly with
/// spectrum_to_couplings.
ModulationSpectrum couplings_to_spectrum(const std::map<int, double>& j_of_r,
                                         double omega_b);

/// Periodic ladder on an even number of sites: distance-1 rails, distance
/// M/2 rungs.
CouplingMatrix builder_mobius(int m_sites, double j_rail, double j_rung);

/// J_ij = |i-j|^s on power-of-two separations, zero elsewhere.
CouplingMatrix builder_tree(double s_exponent, int m_sites);

struct SeparableCoupling {
  CouplingMatrix coupling;
  int rank = 0;  // numerical rank of the profile Gram matrix
};

/// J_ij = Re[sum_mu conj(G_mu_i) G_mu_j] with the diagonal zeroed; each row
/// of `profiles` is one mode profile over sites.
SeparableCoupling builder_separable(const Eigen::MatrixXcd& profiles);

/// Off-diagonal entries i.i.d. Gaussian(0, variance)/sqrt(M), symmetrized.
CouplingMatrix builder_sachdev_ye(int m_sites, double variance, std::uint64_t seed);

struct MagnonDispersion {
  std::vector<double> k;       // 2 pi n / M
  std::vector<double> energy;  // sum_r 2 J(r) cos(k r)
};

MagnonDispersion magnon_dispersion(const std::map<int, double>& j_of_r, int m_sites);

struct QuenchResult {
  std::vector<double> times;
  /// Full quadrature covariance (x_1..x_M, p_1..p_M ordering) per time.
  std::vector<Eigen::MatrixXd> sigma;
  std::vector<Eigen::MatrixXd> cxx;  // <x_i x_j> blocks
  bool unstable = false;             // q (q + 2 lambda_min(J)) < 0
  double instability_rate = 0.0;     // sqrt|q (q + 2 lambda_min)|
  double symplectic_defect = 0.0;    // max ||S Omega S^T - Omega||_max
};

/// Linearized spin-mixing quench: vacuum covariance evolved under
/// H = (q/2) sum_i (x_i^2 + p_i^2) + sum_ij J_ij x_i x_j via the symplectic
/// matrix exponential.
QuenchResult gaussian_quench(const Eigen::MatrixXd& j, double q,
                             const std::vector<double>& t_grid);

struct GeometryReconstruction {
  Eigen::MatrixXd distance;   // d_ij = sqrt(max(0, -ln(|C_ij| / C0)))
  Eigen::MatrixXd embedding;  // M x 3 classical MDS coordinates
  Eigen::Vector3d mds_eigenvalues = Eigen::Vector3d::Zero();
  double stress = 0.0;
};

/// Gaussian-decay ansatz |C| = C0 exp(-d^2) inverted to distances, then
/// classical multidimensional scaling into three dimensions.
GeometryReconstruction corr_to_geometry(const Eigen::MatrixXd& c);

struct CoarseTree {
  struct Merge {
    int left = 0, right = 0;  // cluster ids; leaves are 0..M-1
    double strength = 0.0;    // mean |C| across the merged pair
  };
  std::vector<Merge> merges;       // M - 1 entries, new cluster ids M, M+1, ...
  std::vector<int> leaf_order;     // left-to-right traversal of the final tree
};

/// Greedy agglomeration by mean |C| linkage, lowest-index tie break.
CoarseTree coarse_grain_tree(const Eigen::MatrixXd& c);

}  // namespace cqed::floquet
