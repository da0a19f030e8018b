#include <benchmark/benchmark.h>

#include "chromatic/scenarios.hpp"
#include "chromatic/semantics.hpp"

using namespace chromatic;

namespace {

void BM_EvaluatePhi(benchmark::State& state) {
  const auto agents = default_agents(3);
  const auto name = state.range(0) == 0 ? "is1" : "is2";
  const auto p = build_scenario(name, agents);
  const auto phi = not_all_common_distributed(agents, 1);
  for (auto _ : state) {
    Evaluator e(p);
    benchmark::DoNotOptimize(e.truth(phi));
  }
  state.SetLabel(name);
}
BENCHMARK(BM_EvaluatePhi)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_MuddyChildren(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kids = muddy_children_agents(n);
  const auto val = Valuation::local_state();
  for (auto _ : state) {
    auto m = public_announce(muddy_children_complex(n), val, at_least_one_muddy(kids));
    for (std::size_t k = 1; k < n; ++k) m = public_announce(m, val, nobody_knows_own_mud(kids));
    benchmark::DoNotOptimize(m.facet_count());
  }
}
BENCHMARK(BM_MuddyChildren)->Arg(3)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);

}  // namespace
