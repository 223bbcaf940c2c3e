#include "cqed/cv_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cqed::cv {

namespace {

void check_state(const CovarianceState& state) {
  const Eigen::Index n = state.mean.size();
  if (n < 2 || n % 2 != 0 || state.sigma.rows() != n || state.sigma.cols() != n)
    throw std::invalid_argument("covariance state: inconsistent shape");
}

/// Symplectic eigenvalues: positive imaginary parts of eig(Omega Sigma).
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  const int m = static_cast<int>(sigma.rows()) / 2;
  const Eigen::MatrixXd omega = symplectic_form(m);
  Eigen::EigenSolver<Eigen::MatrixXd> es(omega * sigma);
  std::vector<double> nu;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double im = es.eigenvalues()(k).imag();
    if (im > 0.0) nu.push_back(im);
  }
  return nu;
}

}  // namespace

CovarianceState vacuum_state(int m_modes) {
  if (m_modes < 1) throw std::invalid_argument("vacuum_state: need M >= 1");
  CovarianceState out;
  out.mean = Eigen::VectorXd::Zero(2 * m_modes);
  out.sigma = 0.5 * Eigen::MatrixXd::Identity(2 * m_modes, 2 * m_modes);
  return out;
}

Eigen::MatrixXd symplectic_form(int m_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * m_modes, 2 * m_modes);
  omega.topRightCorner(m_modes, m_modes) = Eigen::MatrixXd::Identity(m_modes, m_modes);
  omega.bottomLeftCorner(m_modes, m_modes) =
      -Eigen::MatrixXd::Identity(m_modes, m_modes);
  return omega;
}

double physicality_defect(const CovarianceState& state) {
  check_state(state);
  const int m = state.n_modes();
  Eigen::MatrixXcd test = state.sigma.cast<std::complex<double>>() +
                          std::complex<double>(0.0, 0.5) *
                              symplectic_form(m).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test);
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

CovarianceState squeeze_collective_mode(const CovarianceState& state,
                                        const Eigen::VectorXd& v, double phi, double r) {
  check_state(state);
  const int m = state.n_modes();
  if (v.size() != m || std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("squeeze_collective_mode: mode vector must be unit length");

  // 2x2 squeezer in the rotated quadrature frame of the collective mode.
  const double c = std::cos(phi), s = std::sin(phi);
  Eigen::Matrix2d rot;
  rot << c, s, -s, c;
  const Eigen::Matrix2d block =
      rot.transpose() * Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal() * rot;

  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  const Eigen::MatrixXd vv = v * v.transpose();
  big.topLeftCorner(m, m) += (block(0, 0) - 1.0) * vv;
  big.topRightCorner(m, m) = block(0, 1) * vv;
  big.bottomLeftCorner(m, m) = block(1, 0) * vv;
  big.bottomRightCorner(m, m) += (block(1, 1) - 1.0) * vv;

  CovarianceState out;
  out.mean = big * state.mean;
  out.sigma = big * state.sigma * big.transpose();
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose().eval());
  return out;
}

CovarianceState local_ops(const CovarianceState& state, const std::vector<int>& sites,
                          double theta) {
  check_state(state);
  const int m = state.n_modes();
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int site : sites) {
    if (site < 0 || site >= m) throw std::invalid_argument("local_ops: site out of range");
    big(site, site) = c;
    big(site, m + site) = s;
    big(m + site, site) = -s;
    big(m + site, m + site) = c;
  }
  CovarianceState out;
  out.mean = big * state.mean;
  out.sigma = big * state.sigma * big.transpose();
  return out;
}

SqueezingPrescription prescription_from_adjacency(const Eigen::MatrixXd& adjacency) {
  const int m = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != m || m < 1)
    throw std::invalid_argument("prescription_from_adjacency: bad shape");
  if ((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("prescription_from_adjacency: adjacency must be symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency);
  SqueezingPrescription out;
  for (int k = 0; k < m; ++k) {
    SqueezingPrescription::Entry e;
    e.mode = es.eigenvectors().col(k);
    e.eigenvalue = es.eigenvalues()(k);
    e.angle = std::atan(e.eigenvalue);
    out.entries.push_back(std::move(e));
  }
  return out;
}

CovarianceState prepare_graph_state(const Eigen::MatrixXd& adjacency, double r) {
  if (r < 0.0) throw std::invalid_argument("prepare_graph_state: r must be >= 0");
  const SqueezingPrescription presc = prescription_from_adjacency(adjacency);
  CovarianceState state = vacuum_state(static_cast<int>(adjacency.rows()));
  for (const auto& e : presc.entries) {
    // Squeeze the nullifier quadrature p - lambda x of each eigenmode,
    // which sits a quarter turn from the prescription angle.
    state = squeeze_collective_mode(state, e.mode,
                                    e.angle + std::numbers::pi / 2.0, r);
  }
  return state;
}

std::vector<double> nullifier_variances(const CovarianceState& state,
                                        const Eigen::MatrixXd& adjacency) {
  check_state(state);
  const int m = state.n_modes();
  if (adjacency.rows() != m || adjacency.cols() != m)
    throw std::invalid_argument("nullifier_variances: dimension mismatch");
  std::vector<double> out;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * m);
    g(m + i) = 1.0;  // p_i
    for (int j = 0; j < m; ++j) g(j) -= adjacency(i, j);
    out.push_back(g.dot(state.sigma * g));
  }
  return out;
}

EprCriterion epr_criterion(const CovarianceState& state, int i, int j) {
  check_state(state);
  const int m = state.n_modes();
  if (i == j || i < 0 || j < 0 || i >= m || j >= m)
    throw std::invalid_argument("epr_criterion: need two distinct valid sites");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * m);
  u(i) = 1.0;
  u(j) = -1.0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * m);
  w(m + i) = 1.0;
  w(m + j) = 1.0;
  EprCriterion out;
  out.v_sum = u.dot(state.sigma * u) + w.dot(state.sigma * w);
  out.entangled = out.v_sum < 2.0;
  return out;
}

CovarianceState prepare_epr_pair(int m_modes, int i, int j, double r) {
  if (i == j || i < 0 || j < 0 || i >= m_modes || j >= m_modes)
    throw std::invalid_argument("prepare_epr_pair: need two distinct valid sites");
  Eigen::VectorXd sym = Eigen::VectorXd::Zero(m_modes);
  sym(i) = sym(j) = 1.0 / std::sqrt(2.0);
  Eigen::VectorXd anti = Eigen::VectorXd::Zero(m_modes);
  anti(i) = 1.0 / std::sqrt(2.0);
  anti(j) = -1.0 / std::sqrt(2.0);
  CovarianceState state = vacuum_state(m_modes);
  // Squeeze X of the antisymmetric mode and P of the symmetric mode: the
  // relative quarter-turn between the two squeezers makes the EPR pair.
  state = squeeze_collective_mode(state, anti, 0.0, r);
  state = squeeze_collective_mode(state, sym, std::numbers::pi / 2.0, r);
  return state;
}

double entanglement_entropy(const CovarianceState& state, const std::vector<int>& subset) {
  check_state(state);
  const int m = state.n_modes();
  for (double nu : symplectic_eigenvalues(state.sigma))
    if (std::abs(nu - 0.5) > 1e-6)
      throw std::invalid_argument("entanglement_entropy: global state must be pure");

  const int k = static_cast<int>(subset.size());
  Eigen::MatrixXd reduced(2 * k, 2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const int ia = subset[a], ib = subset[b];
      if (ia < 0 || ia >= m || ib < 0 || ib >= m)
        throw std::invalid_argument("entanglement_entropy: site out of range");
      reduced(a, b) = state.sigma(ia, ib);
      reduced(a, k + b) = state.sigma(ia, m + ib);
      reduced(k + a, b) = state.sigma(m + ia, ib);
      reduced(k + a, k + b) = state.sigma(m + ia, m + ib);
    }

  double entropy = 0.0;
  for (double nu : symplectic_eigenvalues(reduced)) {
    const double up = nu + 0.5;
    const double dn = nu - 0.5;
    entropy += up * std::log(up);
    if (dn > 1e-12) entropy -= dn * std::log(dn);
  }
  return entropy;
}

}  // namespace cqed::cv
