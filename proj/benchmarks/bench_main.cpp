#include <benchmark/benchmark.h>

#include <vector>

#include "qgsqpo/objectives.hpp"
#include "qgsqpo/qmath.hpp"
#include "qgsqpo/swarm.hpp"

namespace {

using namespace qgsqpo;

// q in thousandths, so q = 1000 is the Gaussian branch
void BM_SampleDeviate(benchmark::State& state) {
  const double q = static_cast<double>(state.range(0)) / 1000.0;
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_q_gaussian(rng, q));
}
BENCHMARK(BM_SampleDeviate)->Arg(1000)->Arg(1072)->Arg(1320)->Arg(1447)->Arg(1625);

void BM_SolveY0(benchmark::State& state) {
  const double q = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_y0_q(0.75, q));
}
BENCHMARK(BM_SolveY0)->Arg(1000)->Arg(1320)->Arg(1625);

void BM_Objective(benchmark::State& state, const char* name) {
  const auto f = make_objective(name, static_cast<std::size_t>(state.range(0)));
  const std::vector<double> x(f.dimension(), 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(f(x));
}
BENCHMARK_CAPTURE(BM_Objective, griewank, "griewank")->Arg(5)->Arg(50);
BENCHMARK_CAPTURE(BM_Objective, rastrigin, "rastrigin")->Arg(5)->Arg(50);
BENCHMARK_CAPTURE(BM_Objective, ackley, "ackley")->Arg(5)->Arg(50);

// One swarm iteration on 5-d Rastrigin with 50 particles.
void BM_SwarmStep(benchmark::State& state) {
  SwarmConfig c;
  c.dimension = 5;
  c.num_particles = 50;
  c.q = static_cast<double>(state.range(0)) / 1000.0;
  c.amplitude_a = 0.2;
  c.seed = 4;
  const auto f = make_objective("rastrigin", c.dimension);
  Swarm swarm(c, f);
  for (auto _ : state) {
    const StepInfo info = swarm.step();
    if (info.diversity < c.diversity_tol) {
      state.PauseTiming();
      swarm = Swarm(c, f, swarm.y0());
      state.ResumeTiming();
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.num_particles));
}
BENCHMARK(BM_SwarmStep)->Arg(1000)->Arg(1447);

}  // namespace
BENCHMARK_MAIN();
