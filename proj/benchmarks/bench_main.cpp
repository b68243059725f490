#include <benchmark/benchmark.h>

#include "nsee/camps.hpp"
#include "nsee/dmrg.hpp"
#include "nsee/models.hpp"
#include "nsee/stabilizer.hpp"

using namespace nsee;

namespace {

PauliString random_pauli(std::size_t n, Rng& rng) {
  std::string text;
  for (std::size_t q = 0; q < n; ++q) text.push_back("IXYZ"[uniform_index(rng, 4)]);
  return PauliString::parse(text);
}

void BM_pauli_multiply(benchmark::State& state) {
  Rng rng(1);
  const auto n = std::size_t(state.range(0));
  const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_pauli_multiply)->Arg(16)->Arg(64)->Arg(256);

void BM_tableau_layer(benchmark::State& state) {
  Rng rng(2);
  const auto n = std::size_t(state.range(0));
  Tableau t = Tableau::zero_state(n);
  std::size_t layer = 0;
  for (auto _ : state) t.apply_inplace(random_clifford_layer(n, rng, layer++));
}
BENCHMARK(BM_tableau_layer)->Arg(16)->Arg(64);

void BM_select_clifford(benchmark::State& state) {
  Rng rng(3);
  const auto d = std::size_t(state.range(0));
  TwoSite theta{Eigen::MatrixXcd::Random(Eigen::Index(2 * d), Eigen::Index(2 * d)), d, d};
  const Truncation tr{64, 1e-8};
  const bool exhaustive = state.range(1) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(select_clifford(theta, SelectionMode::MinTruncationError, tr, {}, 1e-12, exhaustive));
}
BENCHMARK(BM_select_clifford)->Args({4, 0})->Args({16, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

void BM_dmrg_sweep(benchmark::State& state) {
  const LatticeSpec spec{1, std::size_t(state.range(0)), Boundary::Open};
  DmrgConfig cfg;
  cfg.max_bond = 32;
  Rng rng(4);
  DmrgEngine engine(Mpo::from_pauli_sum(transverse_ising(spec, 1.0, 1.0)), random_mps(spec.n_sites(), 8, rng), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(engine.sweep());
}
BENCHMARK(BM_dmrg_sweep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
