#include <benchmark/benchmark.h>

#include "chromatic/algorithms.hpp"
#include "chromatic/scenarios.hpp"
#include "chromatic/task.hpp"

using namespace chromatic;

namespace {

void BM_Search(benchmark::State& state) {
  const auto agents = default_agents(3);
  const std::string name = scenario_names()[static_cast<std::size_t>(state.range(0))];
  const auto p = build_scenario(name, agents);
  const Task t = make_task("majority0", agents);
  std::size_t nodes = 0;
  for (auto _ : state) {
    auto r = search_decision_map(t, p);
    nodes = r.nodes_explored;
    benchmark::DoNotOptimize(r);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.SetLabel(name);
}
BENCHMARK(BM_Search)->DenseRange(0, static_cast<int>(scenario_names().size()) - 1)->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state) {
  const auto agents = default_agents(3);
  const auto p = build_scenario("tas1+partial", agents);
  const Task t = make_task("majority0", agents);
  for (auto _ : state) benchmark::DoNotOptimize(validate_decision_map(t, p, tas_two_round_map(p)));
}
BENCHMARK(BM_Validate)->Unit(benchmark::kMicrosecond);

}  // namespace
