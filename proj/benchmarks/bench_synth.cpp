#include <benchmark/benchmark.h>

#include "gxw/pipeline.hpp"

using namespace gxw;

static void BM_BuildController(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  GxwSpec spec = spec_from_string(make_scaling_spec(n, n, n));
  for (auto _ : state) {
    PartialSystem ps = build_controller(spec);
    share_monitors(ps);
    benchmark::DoNotOptimize(ps.sys.actors.size());
  }
}
BENCHMARK(BM_BuildController)->Arg(4)->Arg(8)->Arg(16);

static void BM_SynthEndToEnd(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  GxwSpec spec = spec_from_string(make_scaling_spec(n, n, n));
  SynthesisOptions opts;
  for (auto _ : state) {
    auto out = run_synthesis(spec, opts);
    benchmark::DoNotOptimize(out.report.verdict);
  }
}
BENCHMARK(BM_SynthEndToEnd)->Arg(4)->Arg(8)->Arg(16);

static void BM_Simulate(benchmark::State& state) {
  GxwSpec spec = spec_from_string(make_scaling_spec(8, 8, 8));
  auto out = run_synthesis(spec, {});
  Trace tr = random_trace(spec, 128, 7);
  std::vector<std::map<std::string, bool>> ins;
  for (size_t t = 0; t < tr.length(); ++t) {
    std::map<std::string, bool> m;
    for (const auto& v : spec.inputs) m[v] = tr.at(t, v);
    ins.push_back(std::move(m));
  }
  for (auto _ : state) {
    auto outs = run(*out.system, ins);
    benchmark::DoNotOptimize(outs.size());
  }
}
BENCHMARK(BM_Simulate);

BENCHMARK_MAIN();
