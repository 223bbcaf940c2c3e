#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cqed/dynamics.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/metrology.hpp"
#include "cqed/spin_algebra.hpp"

using namespace cqed;
namespace met = cqed::metrology;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Wineland parameter") {
  SUBCASE("CSS sits at the projection-noise limit") {
    for (int n : {2, 10, 51}) {
      const SpinSpace ss = make_spin_space(0.5 * n);
      const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.3);
      CHECK(met::wineland_xi2(css) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("twisting beats the CSS") {
    const int n = 40;
    const SpinSpace ss = make_spin_space(0.5 * n);
    QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
    auto res = dynamics::evolve_unitary(hamiltonians::one_axis_twisting(1.0, 0.5 * n),
                                        css, 2.0, 1);
    CHECK(met::wineland_xi2(res.states.back()) < 0.2);
  }

  SUBCASE("rotations leave xi^2 invariant") {
    const SpinSpace ss = make_spin_space(10.0);
    QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
    QuantumState twisted =
        dynamics::evolve_unitary(hamiltonians::one_axis_twisting(1.0, 10.0), css, 1.0, 1)
            .states.back();
    const double before = met::wineland_xi2(twisted);
    CHECK(met::wineland_xi2(rotate(twisted, Axis::Z, 0.7)) ==
          doctest::Approx(before).epsilon(1e-9));
    CHECK(met::wineland_xi2(rotate(twisted, Eigen::Vector3d(1, 1, 1).normalized(), 1.1)) ==
          doctest::Approx(before).epsilon(1e-9));
  }

  SUBCASE("vanishing mean spin is rejected") {
    const SpinSpace ss = make_spin_space(3.0);
    CHECK_THROWS_AS(met::wineland_xi2(dicke_state(ss, 0.0)), std::invalid_argument);
  }
}

TEST_CASE("quantum Fisher information") {
  SUBCASE("CSS along x: shot noise transverse, zero longitudinal") {
    const int n = 24;
    const SpinSpace ss = make_spin_space(0.5 * n);
    const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
    auto z = met::qfi_pure(css, Axis::Z);
    CHECK(z.fisher == doctest::Approx(double(n)).epsilon(1e-10));
    CHECK(z.xi2_i == doctest::Approx(1.0).epsilon(1e-10));
    // Rotations about the mean-spin direction do not move the state.
    auto x = met::qfi_pure(css, Axis::X);
    CHECK(x.fisher == doctest::Approx(0.0).epsilon(1e-10));
  }

  SUBCASE("GHZ-type cat reaches the Heisenberg limit") {
    const int n = 10;
    const SpinSpace ss = make_spin_space(0.5 * n);
    VectorCd psi = VectorCd::Zero(ss.dim);
    psi(0) = 1.0 / std::sqrt(2.0);             // m = +S
    psi(ss.dim - 1) = 1.0 / std::sqrt(2.0);    // m = -S
    auto res = met::qfi_pure(QuantumState::pure(psi, CompositeSpace::single(ss)), Axis::Z);
    CHECK(res.fisher == doctest::Approx(double(n) * n).epsilon(1e-10));
  }

  SUBCASE("mixed states are rejected") {
    const SpinSpace ss = make_spin_space(1.0);
    const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
    CHECK_THROWS_AS(met::qfi_pure(QuantumState::mixed(css.density_matrix(), css.space()),
                                  Axis::Z),
                    std::invalid_argument);
  }
}

TEST_CASE("Allan deviation") {
  SUBCASE("white-noise 1/sqrt(tau) law and prefactor") {
    auto sig = met::allan_deviation(1.0, 1e4, 2.0 * kPi * 9.2e9, 0.1, 0.25, {1.0, 4.0, 100.0});
    const double expect1 = 1.0 / (std::sqrt(1e4) * 2.0 * kPi * 9.2e9 * 0.1) * std::sqrt(0.25);
    CHECK(sig[0] == doctest::Approx(expect1).epsilon(1e-12));
    CHECK(sig[0] / sig[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sig[0] / sig[2] == doctest::Approx(10.0).epsilon(1e-12));
  }

  SUBCASE("squeezing improves stability linearly in xi") {
    auto a = met::allan_deviation(1.0, 100.0, 1.0, 1.0, 1.0, {1.0});
    auto b = met::allan_deviation(0.1, 100.0, 1.0, 1.0, 1.0, {1.0});
    CHECK(a[0] / b[0] == doctest::Approx(10.0).epsilon(1e-12));
  }

  SUBCASE("inconsistent timing rejected") {
    CHECK_THROWS_AS(met::allan_deviation(1.0, 10.0, 1.0, 1.0, 0.5, {1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("twist-untwist echo") {
  SUBCASE("perfect refocusing at zero kick") {
    met::EchoProtocol p;
    p.n_atoms = 30;
    p.t_fwd = 0.8;
    p.angle = 0.0;
    auto res = met::echo_protocol(p);
    CHECK(res.echo_fidelity > 1.0 - 1e-9);
  }

  SUBCASE("peak gain grows as sqrt(N); best echo beats the Gaussian optimum") {
    // Scan the twist time per N and pick the largest amplification.
    auto scan = [](int n) {
      double best_gain = 0.0, best_xi2 = 1e30;
      for (int k = 0; k < 32; ++k) {
        met::EchoProtocol p;
        p.n_atoms = n;
        p.t_fwd = (0.1 + 2.4 * k / 31.0) * std::sqrt(double(n));
        auto res = met::echo_protocol(p);
        best_gain = std::max(best_gain, res.gain);
        if (res.xi2_echo > 0.0) best_xi2 = std::min(best_xi2, res.xi2_echo);
      }
      return std::pair{best_gain, best_xi2};
    };
    const auto [g20, xi20] = scan(20);
    const auto [g40, xi40] = scan(40);
    const auto [g80, xi80] = scan(80);
    // sqrt(N) growth within a factor of 2 across a factor-4 change in N.
    CHECK(g80 / g20 > 1.0);
    CHECK(g80 / g20 < 4.0);
    CHECK(g40 > g20);
    CHECK(xi40 < met::oat_optimum(40).xi2_min);
  }

  SUBCASE("echo phase resolution beats the unamplified CSS") {
    met::EchoProtocol p;
    p.n_atoms = 40;
    p.t_fwd = 1.2;
    auto res = met::echo_protocol(p);
    CHECK(res.xi2_echo < 1.0);
    CHECK(res.dphi_min < 1.0 / std::sqrt(40.0));
  }

  SUBCASE("mean-spin response is odd in the kick angle") {
    met::EchoProtocol p;
    p.n_atoms = 16;
    p.t_fwd = 0.7;
    const SpinSpace ss = make_spin_space(8.0);
    const SpinOperators S = spin_operators(ss);
    p.angle = 1e-3;
    const Eigen::Vector3d fwd = mean_spin(met::echo_protocol(p).final_state, S);
    p.angle = -1e-3;
    const Eigen::Vector3d bwd = mean_spin(met::echo_protocol(p).final_state, S);
    p.angle = 0.0;
    const Eigen::Vector3d base = mean_spin(met::echo_protocol(p).final_state, S);
    // Quadratic contamination of the symmetric sum is O(angle) relative.
    CHECK(((fwd - base) + (bwd - base)).norm() < 1e-2 * (fwd - base).norm() + 1e-12);
  }

  SUBCASE("asymmetric reversal leaves residual twisting") {
    met::EchoProtocol sym, asym;
    sym.n_atoms = asym.n_atoms = 20;
    sym.t_fwd = asym.t_fwd = 0.9;
    asym.t_rev = 0.2;
    CHECK(met::echo_protocol(sym).echo_fidelity > 1.0 - 1e-9);
    CHECK(met::echo_protocol(asym).echo_fidelity < 0.999);
  }

  SUBCASE("invalid sizes rejected") {
    met::EchoProtocol p;
    p.n_atoms = 0;
    CHECK_THROWS_AS(met::echo_protocol(p), std::invalid_argument);
  }
}

TEST_CASE("Wineland parameter never beats the Fisher bound") {
  // Sample states along an OAT trajectory at random times.  The optimal
  // rotation generator is the anti-squeezed transverse direction, for which
  // the Fisher information is 4 V_max; the Robertson relation then gives
  // xi^2 >= N / I.
  const int n = 14;
  const SpinSpace ss = make_spin_space(0.5 * n);
  const SpinOperators S = spin_operators(ss);
  const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> uni(0.01, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = uni(rng);
    VectorCd psi = css.amplitudes();
    for (int i = 0; i < ss.dim; ++i)
      psi(i) *= std::exp(Complex(0.0, -ss.m_of(i) * ss.m_of(i) * t / n));
    const QuantumState state = QuantumState::pure(psi, css.space());
    const SqueezingEllipse e = squeezing_ellipse(state, S);
    const double xi2_i = n / (4.0 * e.v_max);
    CHECK(met::wineland_xi2(state) >= xi2_i - 1e-10);
  }
}

TEST_CASE("one-axis-twisting optimum") {
  SUBCASE("N = 20 optimum near the N^{-2/3} scale") {
    auto opt = met::oat_optimum(20);
    CHECK(opt.xi2_min < 0.3);
    CHECK(opt.xi2_min > 0.01);
    // Optimum is a true local minimum.
    const SpinSpace ss = make_spin_space(10.0);
    const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);
    auto xi2_at = [&](double t) {
      QuantumState psi = css;
      VectorCd v = psi.amplitudes();
      for (int i = 0; i < ss.dim; ++i)
        v(i) *= std::exp(Complex(0.0, -ss.m_of(i) * ss.m_of(i) * t / 20.0));
      return met::wineland_xi2(QuantumState::pure(v, css.space()));
    };
    CHECK(xi2_at(opt.t_opt) <= xi2_at(opt.t_opt * 1.05) + 1e-12);
    CHECK(xi2_at(opt.t_opt) <= xi2_at(opt.t_opt * 0.95) + 1e-12);
    CHECK(opt.xi2_min == doctest::Approx(xi2_at(opt.t_opt)).epsilon(1e-10));
  }

  SUBCASE("scan exponent -2/3") {
    auto scan = met::oat_optimum_scan({20, 40, 80, 160, 320});
    CHECK(scan.exponent == doctest::Approx(-2.0 / 3.0).epsilon(0.15));
    for (std::size_t k = 1; k < scan.optima.size(); ++k)
      CHECK(scan.optima[k].xi2_min < scan.optima[k - 1].xi2_min);
  }

  SUBCASE("tiny systems rejected") {
    CHECK_THROWS_AS(met::oat_optimum(2), std::invalid_argument);
  }
}
