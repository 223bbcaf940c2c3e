#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "cqed/floquet_graphs.hpp"

using namespace cqed::floquet;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tone spectrum to coupling matrix") {
  SUBCASE("single tone r=10 on an 18-site open chain") {
    ModulationSpectrum spec{100.0, {{10, 0.5, 0.0}}};
    auto cm = spectrum_to_couplings(spec, 18, Boundary::Open);
    for (int i = 0; i < 18; ++i)
      for (int j = 0; j < 18; ++j) {
        if (std::abs(i - j) == 10) CHECK(cm.j(i, j) == doctest::Approx(0.5));
        else CHECK(cm.j(i, j) == 0.0);
      }
    CHECK(cm.rotating_wave_valid);
  }

  SUBCASE("empty spectrum gives the zero matrix") {
    auto cm = spectrum_to_couplings({1.0, {}}, 6, Boundary::Open);
    CHECK(cm.j.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("phase pi flips the sign") {
    auto plus = spectrum_to_couplings({10.0, {{2, 0.3, 0.0}}}, 8, Boundary::Periodic);
    auto minus = spectrum_to_couplings({10.0, {{2, 0.3, kPi}}}, 8, Boundary::Periodic);
    CHECK((plus.j + minus.j).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("strong tones invalidate the rotating-wave flag") {
    auto cm = spectrum_to_couplings({1.0, {{1, 0.5, 0.0}}}, 4, Boundary::Open);
    CHECK_FALSE(cm.rotating_wave_valid);
  }

  SUBCASE("duplicate distances rejected") {
    CHECK_THROWS_AS(
        spectrum_to_couplings({1.0, {{1, 0.1, 0.0}, {1, 0.2, 0.0}}}, 4, Boundary::Open),
        std::invalid_argument);
  }

  SUBCASE("periodic distance rule") {
    auto cm = spectrum_to_couplings({10.0, {{1, 1.0, 0.0}}}, 6, Boundary::Periodic);
    CHECK(cm.j(0, 5) == doctest::Approx(1.0));  // wraps around
    CHECK(cm.j(0, 2) == 0.0);
  }
}

TEST_CASE("couplings to spectrum round trip") {
  SUBCASE("Moebius table maps to the two expected tones") {
    auto spec = couplings_to_spectrum({{1, 1.0}, {9, -1.0}}, 5.0);
    REQUIRE(spec.tones.size() == 2);
    CHECK(spec.tones[0].distance == 1);
    CHECK(spec.tones[0].phase == doctest::Approx(0.0));
    CHECK(spec.tones[1].distance == 9);
    CHECK(spec.tones[1].amplitude == doctest::Approx(1.0));
    CHECK(spec.tones[1].phase == doctest::Approx(kPi));
  }

  SUBCASE("round trip reproduces the matrix exactly") {
    const std::map<int, double> table{{1, 0.7}, {3, -0.2}, {5, 0.05}};
    auto direct = spectrum_to_couplings(couplings_to_spectrum(table, 50.0), 12, Boundary::Open);
    ModulationSpectrum manual{50.0, {}};
    for (const auto& [r, j] : table) manual.tones.push_back({r, std::abs(j), j < 0 ? kPi : 0.0});
    auto expected = spectrum_to_couplings(manual, 12, Boundary::Open);
    CHECK((direct.j - expected.j).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("zero entries are dropped") {
    CHECK(couplings_to_spectrum({{2, 0.0}}, 1.0).tones.empty());
  }
}

TEST_CASE("Moebius ladder builder") {
  auto cm = builder_mobius(18, 1.0, -1.0);

  SUBCASE("18 rail bonds and 9 rung bonds, degree 3 everywhere") {
    int rails = 0, rungs = 0;
    for (int i = 0; i < 18; ++i) {
      int degree = 0;
      for (int j = 0; j < 18; ++j) {
        if (cm.j(i, j) == 0.0) continue;
        ++degree;
        if (i < j && cm.j(i, j) > 0) ++rails;
        if (i < j && cm.j(i, j) < 0) ++rungs;
      }
      CHECK(degree == 3);
    }
    CHECK(rails == 18);
    CHECK(rungs == 9);
  }

  SUBCASE("rail and rung values carry the requested signs") {
    CHECK(cm.j(0, 1) == doctest::Approx(1.0));
    CHECK(cm.j(0, 17) == doctest::Approx(1.0));  // periodic rail
    CHECK(cm.j(0, 9) == doctest::Approx(-1.0));  // rung at distance M/2
  }

  SUBCASE("odd M rejected") {
    CHECK_THROWS_AS(builder_mobius(7, 1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("power-of-two tree builder") {
  SUBCASE("s = 0: unit bonds exactly on power-of-two separations") {
    auto cm = builder_tree(0.0, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = i + 1; j < 16; ++j) {
        const int r = j - i;
        const bool pow2 = (r & (r - 1)) == 0;
        CHECK(cm.j(i, j) == (pow2 ? 1.0 : 0.0));
      }
  }

  SUBCASE("s = -2 gives 1/16 at separation 4") {
    CHECK(builder_tree(-2.0, 8).j(0, 4) == doctest::Approx(1.0 / 16.0));
  }

  SUBCASE("s > 0 makes the farthest bond dominate each row") {
    auto cm = builder_tree(0.5, 16);
    for (int i = 0; i < 16; ++i) {
      double best = 0.0;
      int best_r = 0;
      for (int j = 0; j < 16; ++j)
        if (cm.j(i, j) > best) { best = cm.j(i, j); best_r = std::abs(i - j); }
      int farthest = 0;
      for (int j = 0; j < 16; ++j)
        if (cm.j(i, j) != 0.0) farthest = std::max(farthest, std::abs(i - j));
      CHECK(best_r == farthest);
    }
  }
}

TEST_CASE("separable coupling builder") {
  SUBCASE("single cosine profile: rank 1, product pattern") {
    const int m = 10;
    Eigen::MatrixXcd profiles(1, m);
    for (int i = 0; i < m; ++i) profiles(0, i) = std::cos(0.4 * i);
    auto out = builder_separable(profiles);
    CHECK(out.rank == 1);
    for (int i = 0; i < m; ++i) {
      CHECK(out.coupling.j(i, i) == 0.0);
      for (int j = 0; j < m; ++j)
        if (i != j)
          CHECK(out.coupling.j(i, j) ==
                doctest::Approx(std::cos(0.4 * i) * std::cos(0.4 * j)).epsilon(1e-12));
    }
  }

  SUBCASE("orthonormal profiles give full rank") {
    const int m = 6;
    Eigen::MatrixXcd profiles = Eigen::MatrixXcd::Identity(m, m);
    CHECK(builder_separable(profiles).rank == m);
  }

  SUBCASE("duplicated profile does not raise the rank") {
    Eigen::MatrixXcd profiles(2, 5);
    for (int i = 0; i < 5; ++i) profiles(0, i) = profiles(1, i) = 1.0 + 0.3 * i;
    CHECK(builder_separable(profiles).rank == 1);
  }
}

TEST_CASE("Sachdev-Ye random builder") {
  SUBCASE("deterministic under seed, symmetric, zero diagonal") {
    auto a = builder_sachdev_ye(32, 2.0, 99);
    auto b = builder_sachdev_ye(32, 2.0, 99);
    CHECK((a.j - b.j).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.j - a.j.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.j.diagonal().cwiseAbs().maxCoeff() == 0.0);
    auto c = builder_sachdev_ye(32, 2.0, 100);
    CHECK((a.j - c.j).cwiseAbs().maxCoeff() > 0.0);
  }

  SUBCASE("empirical variance tracks variance / M") {
    const int m = 64;
    const double var = 3.0;
    auto cm = builder_sachdev_ye(m, var, 7);
    double sum2 = 0.0;
    int count = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) { sum2 += cm.j(i, j) * cm.j(i, j); ++count; }
    CHECK(sum2 / count == doctest::Approx(var / m).epsilon(0.10));
  }
}

TEST_CASE("magnon dispersion") {
  SUBCASE("nearest neighbor: E(k) = 2 J1 cos k") {
    const int m = 12;
    auto disp = magnon_dispersion({{1, 0.7}}, m);
    for (int n = 0; n < m; ++n) {
      CHECK(disp.k[n] == doctest::Approx(2.0 * kPi * n / m).epsilon(1e-14));
      CHECK(disp.energy[n] == doctest::Approx(2.0 * 0.7 * std::cos(disp.k[n])).epsilon(1e-12));
    }
  }

  SUBCASE("parity E(k) = E(-k)") {
    const int m = 16;
    auto disp = magnon_dispersion({{1, 0.3}, {3, -0.4}, {5, 0.1}}, m);
    for (int n = 1; n < m; ++n)
      CHECK(disp.energy[n] == doctest::Approx(disp.energy[m - n]).epsilon(1e-12));
  }

  SUBCASE("flat table concentrates at k = 0") {
    const int m = 20;
    std::map<int, double> flat;
    for (int r = 1; r <= m / 2; ++r) flat[r] = 1.0;
    auto disp = magnon_dispersion(flat, m);
    for (int n = 1; n < m; ++n) CHECK(disp.energy[0] > disp.energy[n]);
  }
}

TEST_CASE("Gaussian quench") {
  SUBCASE("zero coupling leaves the vacuum invariant") {
    auto res = gaussian_quench(Eigen::MatrixXd::Zero(3, 3), 0.8, {0.0, 0.5, 2.0});
    for (const auto& sigma : res.sigma)
      CHECK((sigma - 0.5 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_FALSE(res.unstable);
  }

  SUBCASE("two-site pairing instability matches the normal-mode closed form") {
    const double j = 1.0, q = 0.6;  // q (q - 2j) < 0: unstable
    Eigen::MatrixXd coupling(2, 2);
    coupling << 0.0, -j, -j, 0.0;
    std::vector<double> t_grid{0.3, 0.9, 1.7};
    auto res = gaussian_quench(coupling, q, t_grid);
    CHECK(res.unstable);
    const double kappa = std::sqrt(q * (2.0 * j - q));
    const double omega = std::sqrt(q * (q + 2.0 * j));
    CHECK(res.instability_rate == doctest::Approx(kappa).epsilon(1e-12));
    for (std::size_t s = 0; s < t_grid.size(); ++s) {
      const double t = t_grid[s];
      const double ch = std::cosh(kappa * t), sh = std::sinh(kappa * t);
      const double var_plus = 0.5 * (ch * ch + (q / kappa) * (q / kappa) * sh * sh);
      const double co = std::cos(omega * t), si = std::sin(omega * t);
      const double var_minus = 0.5 * (co * co + (q / omega) * (q / omega) * si * si);
      const double cxx12 = 0.5 * (var_plus - var_minus);
      CHECK(res.cxx[s](0, 1) == doctest::Approx(cxx12).epsilon(1e-6));
    }
  }

  SUBCASE("symplectic form and physicality preserved") {
    auto cm = builder_tree(0.5, 8);
    std::vector<double> t_grid;
    for (int k = 0; k <= 10; ++k) t_grid.push_back(0.2 * k);
    auto res = gaussian_quench(cm.j, 0.4, t_grid);
    CHECK(res.symplectic_defect < 1e-8);
    using Cd = std::complex<double>;
    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(16, 16);
    omega.topRightCorner(8, 8) = Eigen::MatrixXcd::Identity(8, 8);
    omega.bottomLeftCorner(8, 8) = -Eigen::MatrixXcd::Identity(8, 8);
    for (const auto& sigma : res.sigma) {
      const Eigen::MatrixXcd herm = sigma.cast<Cd>() + Cd(0.0, 0.5) * omega;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
      CHECK(es.eigenvalues().minCoeff() > -1e-8);
    }
  }

  SUBCASE("asymmetric coupling rejected") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(gaussian_quench(bad, 1.0, {0.1}), std::invalid_argument);
  }
}

TEST_CASE("correlation-to-geometry reconstruction") {
  SUBCASE("Gaussian-decay chain embeds on a line") {
    const int m = 14;
    Eigen::MatrixXd c(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c(i, j) = std::exp(-double(i - j) * (i - j));
    auto geo = corr_to_geometry(c);
    REQUIRE(geo.mds_eigenvalues(0) > 0.0);
    CHECK(geo.mds_eigenvalues(2) / geo.mds_eigenvalues(0) < 1e-6);
  }

  SUBCASE("maximally correlated pair sits at distance zero") {
    Eigen::MatrixXd c(3, 3);
    c << 1.0, 0.8, 0.2, 0.8, 1.0, 0.2, 0.2, 0.2, 1.0;
    auto geo = corr_to_geometry(c);
    CHECK(geo.distance(0, 1) == doctest::Approx(0.0));
    CHECK(geo.distance(0, 2) > 0.0);
  }

  SUBCASE("invariant under global rescaling of C") {
    Eigen::MatrixXd c(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) c(i, j) = std::exp(-0.3 * (i - j) * (i - j));
    auto a = corr_to_geometry(c);
    auto b = corr_to_geometry(Eigen::MatrixXd(7.7 * c));
    CHECK((a.distance - b.distance).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("label permutation permutes the distances") {
    const int m = 5;
    Eigen::MatrixXd c(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c(i, j) = 1.0 / (1.0 + std::abs(i - j));
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(m);
    perm.setIdentity();
    std::swap(perm.indices()(0), perm.indices()(3));
    const Eigen::MatrixXd cp = perm.transpose() * c * perm;
    auto a = corr_to_geometry(c);
    auto b = corr_to_geometry(cp);
    const Eigen::MatrixXd expected = perm.transpose() * a.distance * perm;
    CHECK((b.distance - expected).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("vanishing correlations rejected") {
    CHECK_THROWS_AS(corr_to_geometry(Eigen::MatrixXd::Identity(4, 4)),
                    std::invalid_argument);
  }
}

TEST_CASE("coarse-grained correlation tree") {
  SUBCASE("two-block structure splits at the top") {
    const int m = 6;
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(m, m, 0.01);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        c(i, j) = 0.9;
        c(i + 3, j + 3) = 0.9;
      }
    auto tree = coarse_grain_tree(c);
    REQUIRE(static_cast<int>(tree.merges.size()) == m - 1);
    // The final merge joins the two blocks at the weak strength.
    CHECK(tree.merges.back().strength == doctest::Approx(0.01));
    // Every earlier merge is within a block (strong strength).
    for (std::size_t k = 0; k + 1 < tree.merges.size(); ++k)
      CHECK(tree.merges[k].strength == doctest::Approx(0.9));
  }

  SUBCASE("M = 2 has a single merge") {
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 0.5, 0.5, 1.0;
    auto tree = coarse_grain_tree(c);
    REQUIRE(tree.merges.size() == 1);
    CHECK(tree.merges[0].left == 0);
    CHECK(tree.merges[0].right == 1);
    CHECK(tree.leaf_order == std::vector<int>{0, 1});
  }

  SUBCASE("tree-graph quench correlations follow the 2-adic hierarchy") {
    const int m = 16;
    auto cm = builder_tree(0.5, m);
    auto res = gaussian_quench(cm.j, 1.0, {0.1});
    Eigen::MatrixXd c = res.cxx[0];
    c.diagonal().setZero();
    auto tree = coarse_grain_tree(c);
    // First eight merges pair sites at separation 8.
    for (int k = 0; k < 8; ++k) {
      CHECK(tree.merges[k].left < m);
      CHECK(tree.merges[k].right < m);
      CHECK(std::abs(tree.merges[k].left - tree.merges[k].right) == 8);
    }
    // Leaf traversal realizes the bit-reversal ordering.
    std::vector<int> bitrev(m);
    for (int i = 0; i < m; ++i) {
      int rev = 0;
      for (int b = 0; b < 4; ++b)
        if (i & (1 << b)) rev |= 1 << (3 - b);
      bitrev[i] = rev;
    }
    CHECK(tree.leaf_order == bitrev);
  }
}
