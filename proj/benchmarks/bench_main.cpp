#include <benchmark/benchmark.h>

#include "pcgpen/blocks.hpp"
#include "pcgpen/cs_run.hpp"
#include "pcgpen/csgen.hpp"
#include "pcgpen/rng.hpp"

namespace {

using namespace pcgpen;

void BM_SolverStep(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const CsProblem prob = reformulate(generate_instance(m, 4 * m, m / 8, 1.5, 1));
  const SolverConfig cfg = cs_default_config(20.0);
  SolverState s = initial_state(prob.spec, cfg, Vector(prob.instance.n(), 0.0), Vector(m, 0.0));
  for (auto _ : state) {
    s = step(s, prob.spec, cfg);
    benchmark::DoNotOptimize(s.x.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SolverStep)->Arg(45)->Arg(180)->Arg(720);

void BM_LambdaMaxSq(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const CsInstance inst = generate_instance(m, 4 * m, 1, 1.5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_max_sq(inst.A));
}
BENCHMARK(BM_LambdaMaxSq)->Arg(45)->Arg(180);

void BM_LoLpBall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CounterRng rng = CounterRng::stream(3, "bench");
  Vector v(n);
  for (double& e : v) e = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(lo_lp_ball(v, 1.0, 1.5));
}
BENCHMARK(BM_LoLpBall)->Arg(180)->Arg(2880);

void BM_ProxL1Box(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CounterRng rng = CounterRng::stream(4, "bench");
  Vector u(n);
  for (double& e : u) e = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(prox_l1_box(u, 0.3, 2.0));
}
BENCHMARK(BM_ProxL1Box)->Arg(640)->Arg(10240);

}  // namespace

BENCHMARK_MAIN();
