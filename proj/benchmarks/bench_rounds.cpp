#include <benchmark/benchmark.h>

#include "chromatic/communication.hpp"
#include "chromatic/scenarios.hpp"

using namespace chromatic;

namespace {

const char* const kKinds[] = {"ub", "is", "tas"};

void BM_OneRound(benchmark::State& state) {
  const auto agents = default_agents(static_cast<std::size_t>(state.range(1)));
  const auto input = binary_input_complex(agents);
  const auto model = make_model(kKinds[state.range(0)], agents);
  for (auto _ : state) benchmark::DoNotOptimize(one_round(input, model));
  state.SetLabel(kKinds[state.range(0)]);
}
BENCHMARK(BM_OneRound)->ArgsProduct({{0, 1, 2}, {3, 4}})->Unit(benchmark::kMicrosecond);

void BM_Scenario(benchmark::State& state) {
  const auto agents = default_agents(3);
  const std::string name = scenario_names()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(build_scenario(name, agents));
  state.SetLabel(name);
}
BENCHMARK(BM_Scenario)->DenseRange(0, static_cast<int>(scenario_names().size()) - 1)->Unit(benchmark::kMillisecond);

}  // namespace
