// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "json.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/report.hpp"

using namespace mzv;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }

void BM_CompositionSum(benchmark::State& state) {
  CheckOptions opts;
  opts.ctx = PrecisionContext{40};
  opts.exec = mode(state);
  PrecisionScope scope(opts.ctx);
  const auto k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(cor2_weighted_sum(k, 3, Complex::parse("0.75+0.25i"), opts));
  label(state);
}
BENCHMARK(BM_CompositionSum)->ArgsProduct({{0, 1}, {5, 7}})->Unit(benchmark::kMillisecond);

void BM_SimplexIntegral(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(simplex_integral(SimplexForm::prop3_gf_dual, 2, {0.75, 0.25}, {1.0, 0.0}, {0.1, 0.0},
                                              static_cast<int>(state.range(1)), mode(state)));
  label(state);
}
BENCHMARK(BM_SimplexIntegral)->ArgsProduct({{0, 1}, {5, 6}})->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
  const auto config = parse_scan_config(nlohmann::json::parse(R"({"checks":[
      {"id":"prop1","n":[1,2],"m":[1,2],"alpha":["1","0.5","1+0.5i"],"beta":["1.5"]},
      {"id":"prop3","n":{"from":1,"to":3},"k":[4],"alpha":["0.75"]}]})"),
                                        40);
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(config, mode(state)));
  label(state);
}
BENCHMARK(BM_Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
