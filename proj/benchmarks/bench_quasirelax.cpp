// bench_quasirelax.cpp — timings of the reduced state, bath kernels and the oracle
#include <benchmark/benchmark.h>

#include <vector>

#include "quasirelax/density.hpp"
#include "quasirelax/influence.hpp"
#include "quasirelax/kernels.hpp"
#include "quasirelax/oracle.hpp"

using namespace quasirelax;

namespace {

SystemSpec reference_spec() {
    SystemSpec s;
    s.osc1 = {1.0, 1.0, 0.01, 3.93, 0.5};
    s.osc2 = {3.0, 2.0, 0.02, 3.93, 0.5 / 6.0};
    s.lambda = lambda_from_rho(s, 0.02);
    return s;
}

// Argument: time in units of 1/omega01.
void BM_reduced_state(benchmark::State& st) {
    const auto spec = reference_spec();
    const double t = static_cast<double>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reduced_state(t, spec));
}
BENCHMARK(BM_reduced_state)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_eval_ABC(benchmark::State& st) {
    const auto spec = reference_spec();
    const auto m = linearized_modes(spec);
    const double t = static_cast<double>(st.range(0)) + 0.37;
    for (auto _ : st) benchmark::DoNotOptimize(eval_ABC(t, 1, spec, m));
}
BENCHMARK(BM_eval_ABC)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_eval_kernels(benchmark::State& st) {
    const auto spec = reference_spec();
    const auto m = linearized_modes(spec);
    for (auto _ : st) benchmark::DoNotOptimize(eval_kernels(7.3, m, spec));
}
BENCHMARK(BM_eval_kernels);

// Argument: bath modes per bath.
void BM_oracle_reduced(benchmark::State& st) {
    const auto spec = reference_spec();
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(25.0 * i);
    OracleConfig cfg;
    cfg.bath.modes = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(run_oracle(spec, grid, cfg));
}
BENCHMARK(BM_oracle_reduced)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
