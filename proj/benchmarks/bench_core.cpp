#include <numbers>

#include <benchmark/benchmark.h>

#include "cqed/dynamics.hpp"
#include "cqed/floquet_graphs.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/metrology.hpp"
#include "cqed/spin_algebra.hpp"

namespace {

using namespace cqed;

void bm_squeezing_ellipse(benchmark::State& state) {
  const SpinSpace ss = make_spin_space(0.5 * state.range(0));
  const SpinOperators S = spin_operators(ss);
  const QuantumState css = coherent_spin_state(ss, std::numbers::pi / 2.0, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(squeezing_ellipse(css, S).v_min);
}
BENCHMARK(bm_squeezing_ellipse)->Arg(64)->Arg(256)->Arg(1024);

void bm_unitary_evolution(benchmark::State& state) {
  const double spin = 0.5 * state.range(0);
  const OperatorMatrix h = hamiltonians::one_axis_twisting(1.0, spin);
  const QuantumState css =
      coherent_spin_state(make_spin_space(spin), std::numbers::pi / 2.0, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(dynamics::evolve_unitary(h, css, 1.0, 2).states.size());
}
BENCHMARK(bm_unitary_evolution)->Arg(128)->Arg(512)->Arg(2048);

void bm_lindblad_dephasing(benchmark::State& state) {
  const double spin = 0.5 * state.range(0);
  for (auto _ : state) {
    const auto res = dynamics::dissipative_oat(1.0, 1.0, spin, {0.5});
    benchmark::DoNotOptimize(res.v_min.back());
  }
}
BENCHMARK(bm_lindblad_dephasing)->Arg(20)->Arg(40);

void bm_oat_optimum(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(metrology::oat_optimum(state.range(0)).xi2_min);
}
BENCHMARK(bm_oat_optimum)->Arg(40)->Arg(160);

void bm_gaussian_quench(benchmark::State& state) {
  const auto cm = floquet::builder_tree(0.5, state.range(0));
  std::vector<double> t_grid;
  for (int k = 1; k <= 10; ++k) t_grid.push_back(0.05 * k);
  for (auto _ : state)
    benchmark::DoNotOptimize(floquet::gaussian_quench(cm.j, 1.0, t_grid).cxx.size());
}
BENCHMARK(bm_gaussian_quench)->Arg(16)->Arg(64);

}  // namespace
