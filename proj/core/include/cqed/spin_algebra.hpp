#pragma once

#include <vector>

#include "cqed/operator_matrix.hpp"
#include "cqed/quantum_state.hpp"

namespace cqed {

/// Collective spin operators on a SpinSpace.
struct SpinOperators {
  OperatorMatrix sx, sy, sz, sp, sm;
};

/// S_z diagonal with entries m; S_+|S,m> = sqrt(S(S+1)-m(m+1))|S,m+1>.
SpinOperators spin_operators(const SpinSpace& space);

/// exp(-i phi S_z) exp(-i theta S_y) |S,S>.
QuantumState coherent_spin_state(const SpinSpace& space, double theta, double phi);

/// Basis vector |S,m>.
QuantumState dicke_state(const SpinSpace& space, double m);

enum class Axis { X, Y, Z };

/// exp(-i angle S_axis) |psi>; for density matrices the conjugation.
QuantumState rotate(const QuantumState& state, Axis axis, double angle);
QuantumState rotate(const QuantumState& state, const Eigen::Vector3d& axis, double angle);

struct Moments {
  std::vector<double> expectations;   // Re<A_k>
  std::vector<double> variances;      // <A_k^2> - <A_k>^2
  Eigen::MatrixXd covariances;        // symmetrized: Re<{A_j,A_k}>/2 - <A_j><A_k>
};

Moments moments(const QuantumState& state, const std::vector<OperatorMatrix>& ops);

/// Mean spin vector (<S_x>, <S_y>, <S_z>).
Eigen::Vector3d mean_spin(const QuantumState& state, const SpinOperators& S);

/// Transverse spin variance V(theta) = Var(cos(theta) S_e1 + sin(theta) S_e2)
/// in the frame orthogonal to the mean spin direction.
struct SqueezingEllipse {
  std::vector<double> theta_grid;
  std::vector<double> variance_grid;
  double v_min = 0.0;
  double v_max = 0.0;
  double theta_min = 0.0;          // angle attaining v_min
  Eigen::Vector3d mean_direction;  // unit vector along <S>
  Eigen::Vector3d e1, e2;          // transverse frame
};

/// Requires |<S>| > 0 (throws std::invalid_argument otherwise).
/// The grid minimum is refined by golden-section search to 1e-6 relative.
SqueezingEllipse squeezing_ellipse(const QuantumState& state, const SpinOperators& S,
                                   int n_grid = 180);

}  // namespace cqed
