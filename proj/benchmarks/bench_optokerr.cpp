#include <benchmark/benchmark.h>

#include <vector>

#include "optokerr/optokerr.hpp"

using namespace optokerr;

namespace {

ReducedParams fig2() { return reduce(fig2_preset().params); }

void BM_SpectrumPoint(benchmark::State& state) {
  auto rp = fig2();
  rp.Delta = 1.0;
  const Model model = state.range(0) == 0 ? Model::BO : Model::Full;
  const auto ss = solve_steady_state(rp, model);
  double w = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_intensity(rp, ss, w, model));
    w = w < 1e3 ? w * 1.01 : 0.5;
  }
}
BENCHMARK(BM_SpectrumPoint)->Arg(0)->Arg(1);

void BM_SteadyState(benchmark::State& state) {
  ReducedParams rp;
  rp.chi = 1.0;
  rp.lam = 1.4142135623730951;
  rp.Omega = 100.0;
  double dp = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_amplitude(rp, dp));
    dp = dp < 4.0 ? dp + 1e-3 : 3.0;
  }
}
BENCHMARK(BM_SteadyState);

void BM_FindMinFrequency(benchmark::State& state) {
  auto rp = fig2();
  rp.Delta = 1.0;
  const Model model = state.range(0) == 0 ? Model::BO : Model::Full;
  const auto ss = solve_steady_state(rp, model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_min_frequency(rp, ss, model, default_omega_range(rp)));
  }
}
BENCHMARK(BM_FindMinFrequency)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DetuningScan(benchmark::State& state) {
  const auto rp = fig2();
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  }
  ScanOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(detuning_scan(rp, grid, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetuningScan)->Arg(41)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_BoDiagonalization(benchmark::State& state) {
  const MirrorModel mirror{1.0, 2.0, 0.5};
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto h = build_mirror_hamiltonian(mirror, 3, dim);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(), Eigen::EigenvaluesOnly);
    benchmark::DoNotOptimize(solver.eigenvalues()(0));
  }
}
BENCHMARK(BM_BoDiagonalization)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

void BM_QndCommutators(benchmark::State& state) {
  QndParams q;
  q.chiL = 0.3;
  q.chiR = 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(qnd_commutator_norms(q));
}
BENCHMARK(BM_QndCommutators);

}  // namespace

BENCHMARK_MAIN();
