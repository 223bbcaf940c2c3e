#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cqed/qnd.hpp"
#include "cqed/spin_algebra.hpp"

using namespace cqed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parity herald") {
  SUBCASE("even probability (1 + e^{-2 alpha^2})/2 at Phi1 = pi") {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      const int n_max = static_cast<int>(alpha * alpha + 6.0 * alpha + 12.0);
      auto res = qnd::parity_herald(alpha, kPi, n_max);
      const double expect = 0.5 * (1.0 + std::exp(-2.0 * alpha * alpha));
      CHECK(res.even.probability == doctest::Approx(expect).epsilon(1e-9));
      CHECK(res.even.probability + res.odd.probability == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("herald purifies the photon-number parity") {
    auto res = qnd::parity_herald(2.0, kPi, 40);
    CHECK(res.parity_even == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.parity_odd == doctest::Approx(-1.0).epsilon(1e-9));
  }

  SUBCASE("heralded states are the cats at Phi1 = pi") {
    auto res = qnd::parity_herald(2.0, kPi, 40);
    CHECK(res.even.fidelity > 1.0 - 1e-10);
    CHECK(res.odd.fidelity > 1.0 - 1e-10);
  }

  SUBCASE("general Phi1 herald probability from the characteristic function") {
    // sum_n |c_n|^2 cos(Phi n) = e^{a^2 (cos Phi - 1)} cos(a^2 sin Phi).
    const double alpha = 1.3, phi = kPi / 3.0;
    auto res = qnd::parity_herald(alpha, phi, 40);
    const double a2 = alpha * alpha;
    const double expect =
        0.5 * (1.0 + std::exp(a2 * (std::cos(phi) - 1.0)) * std::cos(a2 * std::sin(phi)));
    CHECK(res.even.probability == doctest::Approx(expect).epsilon(1e-10));
  }

  SUBCASE("Phi1 = 0 does nothing") {
    auto res = qnd::parity_herald(1.0, 0.0, 30);
    CHECK(res.even.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.odd.probability == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("insufficient cutoff is rejected") {
    CHECK_THROWS_AS(qnd::parity_herald(3.0, kPi, 12), std::invalid_argument);
  }
}

TEST_CASE("progressive collapse") {
  SUBCASE("posterior concentrates on the hidden photon number") {
    auto res = qnd::progressive_collapse(1.0, 1.0, 200, {}, 42);
    CHECK(res.concentration > 0.99);
    int argmax = 0;
    for (std::size_t n = 1; n < res.posterior.size(); ++n)
      if (res.posterior[n] > res.posterior[argmax]) argmax = static_cast<int>(n);
    CHECK(argmax == res.hidden_n);
    CHECK(res.entropy.back() < res.entropy.front());
    CHECK(static_cast<int>(res.outcomes.size()) == 200);
  }

  SUBCASE("deterministic under a fixed seed") {
    auto a = qnd::progressive_collapse(2.0, kPi / 2.0, 60, {}, 7);
    auto b = qnd::progressive_collapse(2.0, kPi / 2.0, 60, {}, 7);
    CHECK(a.hidden_n == b.hidden_n);
    CHECK(a.outcomes == b.outcomes);
    for (std::size_t n = 0; n < a.posterior.size(); ++n)
      CHECK(a.posterior[n] == b.posterior[n]);
  }

  SUBCASE("posterior stays normalized") {
    auto res = qnd::progressive_collapse(1.5, 0.8, 50, {0.0, kPi / 3.0}, 3);
    double z = 0.0;
    for (double p : res.posterior) z += p;
    CHECK(z == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("Phi1 outside (0, pi] is rejected") {
    CHECK_THROWS_AS(qnd::progressive_collapse(1.0, 0.0, 5, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(qnd::progressive_collapse(1.0, 3.5, 5, {}, 1), std::invalid_argument);
  }
}

TEST_CASE("Gaussian conditional squeezing") {
  SUBCASE("posterior update algebra") {
    auto res = qnd::conditional_squeeze_gaussian(100.0, 1.0, 0.0, 0.0);
    CHECK(res.var_sz_conditional == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.mean_shift_gain == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.xi2 == doctest::Approx(0.5).epsilon(1e-12));
    // Gain and conditional variance always sum to one.
    auto res2 = qnd::conditional_squeeze_gaussian(100.0, 0.37, 0.0, 0.0);
    CHECK(res2.var_sz_conditional + res2.mean_shift_gain == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("noisy detector limit recovers the CSS") {
    auto res = qnd::conditional_squeeze_gaussian(100.0, 1e9, 0.0, 0.0);
    CHECK(res.var_sz_conditional == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.mean_shift_gain == doctest::Approx(0.0).epsilon(1e-6));
  }

  SUBCASE("back-action keeps the conditional state near minimum uncertainty") {
    auto res = qnd::conditional_squeeze_gaussian(100.0, 0.2, 0.0, 0.0);
    CHECK(res.var_sz_conditional * res.backaction_var_sy == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("scattering degrades the Wineland parameter") {
    auto clean = qnd::conditional_squeeze_gaussian(100.0, 0.1, 0.0, 0.0);
    auto raman = qnd::conditional_squeeze_gaussian(100.0, 0.1, 0.3, 1.0);
    CHECK(raman.xi2 > clean.xi2);
    // Contrast loss alone inflates xi^2 by e^{2 Gamma t}.
    auto cycling = qnd::conditional_squeeze_gaussian(100.0, 0.1, 0.3, 0.0);
    CHECK(cycling.xi2 == doctest::Approx(clean.xi2 * std::exp(0.6)).epsilon(1e-12));
  }

  SUBCASE("invalid measurement noise rejected") {
    CHECK_THROWS_AS(qnd::conditional_squeeze_gaussian(10.0, 0.0, 0.0, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("Faraday W-state herald") {
  SUBCASE("small-Phi herald approaches the x-basis W state") {
    auto res = qnd::herald_w_faraday(4, 0.01);
    CHECK(res.outcome.fidelity > 0.99);
    CHECK_FALSE(res.aliasing_warning);
  }

  SUBCASE("success probability ~ Phi^2 N / 4") {
    const int n = 12;
    const double phi = 1e-3;
    auto res = qnd::herald_w_faraday(n, phi);
    CHECK(res.outcome.probability ==
          doctest::Approx(phi * phi * n / 4.0).epsilon(1e-3));
  }

  SUBCASE("fidelity improves as Phi shrinks") {
    const double f_big = qnd::herald_w_faraday(8, 0.3).outcome.fidelity;
    const double f_small = qnd::herald_w_faraday(8, 0.01).outcome.fidelity;
    CHECK(f_small > f_big);
    CHECK(f_small > 0.999);
  }

  SUBCASE("aliasing flag for Phi S > pi/2") {
    CHECK(qnd::herald_w_faraday(4, 1.0).aliasing_warning);
    CHECK(qnd::herald_w_faraday(20, 0.2).aliasing_warning);
  }

  SUBCASE("post-state S_z distribution is bimodal") {
    auto res = qnd::herald_w_faraday(16, 0.05);
    CHECK(res.bimodality_d > 2.0);  // well-separated lobes
  }
}

TEST_CASE("pulse painting") {
  const SpinSpace ss = make_spin_space(2.0);  // N = 4
  const QuantumState css = coherent_spin_state(ss, kPi / 2.0, 0.0);

  SUBCASE("two-pulse carving removes odd m at Omega1 dt = pi") {
    // kappa = 0: K_m ~ 1 + e^{-i pi m}, which annihilates odd m.
    VectorCd even = css.amplitudes();
    double p_even = 0.0;
    for (int i = 0; i < ss.dim; ++i) {
      const int m = static_cast<int>(std::lround(ss.m_of(i)));
      if (m % 2 != 0) even(i) = 0.0;
      else p_even += std::norm(even(i));
    }
    const QuantumState target = QuantumState::pure(even.normalized(), css.space());

    auto out = qnd::paint(css, qnd::PulseShape::two_pulse(1.0), kPi, 0.0, target);
    CHECK(out.fidelity > 1.0 - 1e-12);
    CHECK(out.probability == doctest::Approx(p_even).epsilon(1e-12));
  }

  SUBCASE("uniform circle with Omega1 T = 2 pi carves the m = 0 Dicke state") {
    const SpinSpace big = make_spin_space(3.0);  // m in [-3, 3], 8 samples alias at |m| = 8
    const QuantumState init = coherent_spin_state(big, kPi / 2.0, 0.0);
    const QuantumState target = dicke_state(big, 0.0);
    auto out = qnd::paint(init, qnd::PulseShape::circle(2.0 * kPi, 8), 1.0, 0.0, target);
    CHECK(out.fidelity > 1.0 - 1e-12);
  }

  SUBCASE("exponential envelope compensates cavity decay") {
    // Amplitude e^{-kappa t / 2} cancels the detection weight
    // e^{-kappa (T - t)/2} up to a global constant, recovering the
    // lossless circle.
    const double kappa = 1.3;
    const QuantumState init = coherent_spin_state(make_spin_space(3.0), kPi / 2.0, 0.0);
    const QuantumState target = dicke_state(make_spin_space(3.0), 0.0);
    auto flat = qnd::paint(init, qnd::PulseShape::exp_circle(2.0 * kPi, -kappa, 16),
                           1.0, kappa, target);
    CHECK(flat.fidelity > 1.0 - 1e-12);
  }

  SUBCASE("rejects composite-space input and empty pulses") {
    CHECK_THROWS_AS(qnd::paint(css, qnd::PulseShape{}, 1.0, 0.0, css),
                    std::invalid_argument);
  }
}

TEST_CASE("vacuum Rabi transmission") {
  auto linspace = [](double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1.0);
    return v;
  };

  SUBCASE("splitting 2 g sqrt(N)") {
    const double g = 1.0, kappa = 0.05, gamma = 0.05;
    for (int n : {1, 16}) {
      const double half = 2.0 * g * std::sqrt(double(n));
      auto spec = qnd::vacuum_rabi_spectrum(g, n, kappa, gamma, linspace(-half, half, 8001));
      CHECK(spec.splitting == doctest::Approx(2.0 * g * std::sqrt(double(n))).epsilon(0.01));
    }
  }

  SUBCASE("empty cavity is a single Lorentzian at resonance") {
    auto spec = qnd::vacuum_rabi_spectrum(0.0, 1, 0.4, 0.1, linspace(-2.0, 2.0, 2001));
    CHECK(spec.splitting == doctest::Approx(0.0));
    const std::size_t mid = spec.omega.size() / 2;
    CHECK(spec.transmission[mid] == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("strong coupling suppresses resonant transmission") {
    auto spec = qnd::vacuum_rabi_spectrum(1.0, 4, 0.05, 0.05, linspace(-0.01, 0.01, 3));
    CHECK(spec.transmission[1] < 1e-3);
  }
}
