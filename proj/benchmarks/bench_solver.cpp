#include <benchmark/benchmark.h>

#include "sbrs/compatibility.hpp"
#include "sbrs/generator.hpp"
#include "sbrs/methods.hpp"
#include "sbrs/routing.hpp"
#include "sbrs/scheduling.hpp"

namespace {

using namespace sbrs;

void BM_generate(benchmark::State& state) {
  const int schools = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_instance(schools, schools * 10, 7));
}
BENCHMARK(BM_generate)->Arg(4)->Arg(10)->Arg(30);

void BM_exact_routing(benchmark::State& state) {
  const Instance inst = generate_instance(2, 2 * static_cast<int>(state.range(0)), 5);
  SolverConfig cfg;
  const School& k = inst.schools[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_enumerate(k, RoutingObjective::min_nt(cfg), cfg, inst));
  state.SetLabel(std::to_string(k.stops.size()) + " stops");
}
BENCHMARK(BM_exact_routing)->Arg(3)->Arg(4);

void BM_heuristic_routing(benchmark::State& state) {
  const Instance inst = generate_instance(2, 2 * static_cast<int>(state.range(0)), 5);
  SolverConfig cfg;
  const School& k = inst.schools[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(
        heuristic_solve(k, RoutingObjective::min_nt(cfg), cfg, inst, cfg.time_limit_s));
  state.SetLabel(std::to_string(k.stops.size()) + " stops");
}
BENCHMARK(BM_heuristic_routing)->Arg(10)->Arg(25);

void BM_pair_set(benchmark::State& state) {
  const int schools = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(schools, schools * 10, 11);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinNT);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_pair_set(sol.plan, inst));
  state.SetLabel(std::to_string(sol.plan.trips.size()) + " trips");
}
BENCHMARK(BM_pair_set)->Arg(8)->Arg(20);

void BM_schedule(benchmark::State& state) {
  const int schools = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(schools, schools * 10, 11);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinNT);
  const CompatibilityGraph g = build_pair_set(sol.plan, inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_schedule(sol.plan, g, cfg));
  state.SetLabel(std::to_string(sol.plan.trips.size()) + " trips");
}
BENCHMARK(BM_schedule)->Arg(8)->Arg(20)->Arg(30);

void BM_end_to_end(benchmark::State& state) {
  const int schools = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(schools, schools * 10, 3);
  SolverConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_algorithm2(inst, cfg, true));
}
BENCHMARK(BM_end_to_end)->Arg(4)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
