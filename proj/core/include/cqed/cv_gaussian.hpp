#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cqed::cv {

/// Gaussian state of M oscillators; quadrature ordering x_1..x_M, p_1..p_M,
/// vacuum Var(x) = Var(p) = 1/2 ([x, p] = i).
struct CovarianceState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd sigma;

  int n_modes() const { return static_cast<int>(mean.size()) / 2; }
};

CovarianceState vacuum_state(int m_modes);

/// Standard symplectic form Omega = [[0, I], [-I, 0]].
Eigen::MatrixXd symplectic_form(int m_modes);

/// max negative eigenvalue violation of Sigma + i Omega / 2 >= 0.
double physicality_defect(const CovarianceState& state);

/// Squeezes the quadrature cos(phi) X_v + sin(phi) P_v of the collective
/// mode v (unit M-vector) by e^{-r}, anti-squeezes the orthogonal
/// quadrature, identity elsewhere.
CovarianceState squeeze_collective_mode(const CovarianceState& state,
                                        const Eigen::VectorXd& v, double phi, double r);

/// Per-site phase-space rotation of (x_j, p_j) by theta; theta = pi is the
/// local flip (x, p) -> (-x, -p).
CovarianceState local_ops(const CovarianceState& state, const std::vector<int>& sites,
                          double theta);

struct SqueezingPrescription {
  struct Entry {
    Eigen::VectorXd mode;  // unit M-vector
    double angle = 0.0;    // arctan(lambda)
    double eigenvalue = 0.0;
  };
  std::vector<Entry> entries;
};

/// Eigenmodes of the adjacency matrix with quadrature angles
/// phi_mu = arctan(lambda_mu).
SqueezingPrescription prescription_from_adjacency(const Eigen::MatrixXd& adjacency);

/// Applies the adjacency prescription at uniform strength r to vacuum; each
/// eigenmode is squeezed along its nullifier quadrature (the direction
/// orthogonal to x cos(phi) + p sin(phi)), so that every nullifier variance
/// contracts as (1 + lambda^2) e^{-2r} / 2.
CovarianceState prepare_graph_state(const Eigen::MatrixXd& adjacency, double r);

/// Var(p_i - sum_j A_ij x_j) per site.
std::vector<double> nullifier_variances(const CovarianceState& state,
                                        const Eigen::MatrixXd& adjacency);

struct EprCriterion {
  double v_sum = 0.0;  // Var(X_i - X_j) + Var(P_i + P_j)
  bool entangled = false;  // v_sum < 2 (sum of two vacuum-pair variances)
};

EprCriterion epr_criterion(const CovarianceState& state, int i, int j);

/// Two-mode squeezed (EPR) pair on sites i, j at strength r:
/// Var(X_i - X_j) + Var(P_i + P_j) = 2 e^{-2r}.
CovarianceState prepare_epr_pair(int m_modes, int i, int j, double r);

/// Von Neumann entropy (nats) of the reduced state of `subset`; requires a
/// globally pure state (all symplectic eigenvalues 1/2 within 1e-6).
double entanglement_entropy(const CovarianceState& state, const std::vector<int>& subset);

}  // namespace cqed::cv
