#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cqed/spin_algebra.hpp"

using namespace cqed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("su(2) commutators and Casimir hold for all S <= 25") {
  for (int twice_s = 1; twice_s <= 50; ++twice_s) {
    const double s = 0.5 * twice_s;
    const SpinSpace ss = make_spin_space(s);
    const SpinOperators S = spin_operators(ss);

    const MatrixCd lhs = OperatorMatrix::commutator(S.sx, S.sy).dense();
    const MatrixCd rhs = Complex(0.0, 1.0) * S.sz.dense();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

    const MatrixCd casimir =
        (S.sx * S.sx + S.sy * S.sy + S.sz * S.sz).dense();
    const MatrixCd expected =
        s * (s + 1.0) * MatrixCd::Identity(ss.dim, ss.dim);
    CHECK((casimir - expected).cwiseAbs().maxCoeff() < 1e-10);

    // Ladder relations against the explicit matrix elements.
    const MatrixCd ladder = OperatorMatrix::commutator(S.sp, S.sm).dense();
    CHECK((ladder - 2.0 * S.sz.dense()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("coherent spin state moments") {
  const SpinSpace ss = make_spin_space(10.0);
  const SpinOperators S = spin_operators(ss);

  SUBCASE("north pole") {
    QuantumState psi = coherent_spin_state(ss, 0.0, 0.0);
    CHECK(mean_spin(psi, S).isApprox(Eigen::Vector3d(0, 0, 10.0), 1e-12));
  }
  SUBCASE("equator along x, projection noise S/2") {
    QuantumState psi = coherent_spin_state(ss, kPi / 2.0, 0.0);
    const Eigen::Vector3d mean = mean_spin(psi, S);
    CHECK(mean.x() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(mean.y()) < 1e-12);
    const Moments mom = moments(psi, {S.sy, S.sz});
    CHECK(mom.variances[0] == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(mom.variances[1] == doctest::Approx(5.0).epsilon(1e-10));
  }
  SUBCASE("generic direction") {
    const double theta = 0.7, phi = 1.3;
    QuantumState psi = coherent_spin_state(ss, theta, phi);
    const Eigen::Vector3d n(std::sin(theta) * std::cos(phi),
                            std::sin(theta) * std::sin(phi), std::cos(theta));
    CHECK(mean_spin(psi, S).isApprox(10.0 * n, 1e-10));
  }
}

TEST_CASE("rotations preserve norm and compose as expected") {
  const SpinSpace ss = make_spin_space(7.5);
  const SpinOperators S = spin_operators(ss);
  QuantumState psi = coherent_spin_state(ss, 0.0, 0.0);

  // Rotating the north pole by theta about y reproduces the CSS.
  QuantumState rotated = rotate(psi, Axis::Y, 0.9);
  QuantumState css = coherent_spin_state(ss, 0.9, 0.0);
  CHECK(rotated.fidelity(css) == doctest::Approx(1.0).epsilon(1e-12));

  // Invariance of the rotation generator's expectation.
  QuantumState about_z = rotate(css, Axis::Z, 1.1);
  CHECK(about_z.expectation(S.sz).real() ==
        doctest::Approx(css.expectation(S.sz).real()).epsilon(1e-10));
  CHECK(about_z.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Axis-vector form agrees with the enum form.
  QuantumState via_vec = rotate(css, Eigen::Vector3d::UnitZ(), 1.1);
  CHECK(via_vec.fidelity(about_z) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dicke states are S_z eigenstates") {
  const SpinSpace ss = make_spin_space(3.0);
  const SpinOperators S = spin_operators(ss);
  for (double m = -3.0; m <= 3.0; m += 1.0) {
    QuantumState d = dicke_state(ss, m);
    CHECK(d.expectation(S.sz).real() == doctest::Approx(m).epsilon(1e-12));
    const Moments mom = moments(d, {S.sz});
    CHECK(std::abs(mom.variances[0]) < 1e-12);
  }
}

TEST_CASE("squeezing ellipse of a CSS is round") {
  const SpinSpace ss = make_spin_space(15.0);
  const SpinOperators S = spin_operators(ss);
  QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.3);
  SqueezingEllipse e = squeezing_ellipse(css, S);
  CHECK(e.v_min == doctest::Approx(7.5).epsilon(1e-8));
  CHECK(e.v_max == doctest::Approx(7.5).epsilon(1e-8));
  CHECK(std::abs(e.mean_direction.dot(e.e1)) < 1e-12);
  CHECK(std::abs(e.mean_direction.dot(e.e2)) < 1e-12);
  CHECK(std::abs(e.e1.dot(e.e2)) < 1e-12);
}

TEST_CASE("squeezing ellipse requires a mean spin") {
  const SpinSpace ss = make_spin_space(2.0);
  const SpinOperators S = spin_operators(ss);
  QuantumState dicke0 = dicke_state(ss, 0.0);
  CHECK_THROWS_AS(squeezing_ellipse(dicke0, S), std::invalid_argument);
}

TEST_CASE("mixed-state moments match pure-state moments on a projector") {
  const SpinSpace ss = make_spin_space(4.0);
  const SpinOperators S = spin_operators(ss);
  QuantumState psi = coherent_spin_state(ss, 1.0, 0.4);
  QuantumState rho = QuantumState::mixed(psi.density_matrix(), psi.space());
  const Moments a = moments(psi, {S.sx, S.sy, S.sz});
  const Moments b = moments(rho, {S.sx, S.sy, S.sz});
  for (int k = 0; k < 3; ++k) {
    CHECK(a.expectations[k] == doctest::Approx(b.expectations[k]).epsilon(1e-10));
    CHECK(a.variances[k] == doctest::Approx(b.variances[k]).epsilon(1e-10));
  }
  CHECK((a.covariances - b.covariances).cwiseAbs().maxCoeff() < 1e-10);
}
