#include <doctest.h>

#include <set>

#include "chromatic/algorithms.hpp"
#include "chromatic/error.hpp"
#include "chromatic/scenarios.hpp"

using namespace chromatic;

namespace {

LocalState view(const std::string& self, std::vector<std::pair<std::string, int>> heard) {
  std::vector<LocalState::Entry> entries;
  for (const auto& [sender, value] : heard) entries.push_back({sender, LocalState::initial(sender, value)});
  return LocalState::after_round(self, std::move(entries));
}

int courteous_decision(const ChromaticComplex& p, const std::string& state) {
  auto d = courteous_map(p);
  for (VertexIndex v = 0; v < p.vertices().size(); ++v) {
    if (p.vertex(v).state.canonical() == state) return d.values[v];
  }
  FAIL("state not found: " << state);
  return -1;
}

}  // namespace

TEST_CASE("courteous rule cases") {
  auto p = build_scenario("ub1", default_agents(3));
  CHECK(courteous_decision(p, "a[a:1|b:1|c:1]") == 1);
  CHECK(courteous_decision(p, "a[a:1|b:0]") == 0);
  CHECK(courteous_decision(p, "a[a:0|b:1]") == 1);
  CHECK(courteous_decision(p, "c[a:0|b:0|c:1]") == 0);
  CHECK(courteous_decision(p, "c[a:1|b:1|c:0]") == 1);
  CHECK(courteous_decision(p, "c[a:0|b:1|c:1]") == 0);
  CHECK(courteous_decision(p, "b[b:0]") == 0);
}

TEST_CASE("courteous rule is correct and equals the knowledge-threshold rule") {
  const auto agents = default_agents(3);
  auto p = build_scenario("ub1", agents);
  auto t = make_task("majority0", agents);
  auto courteous = courteous_map(p);
  CHECK(validate_decision_map(t, p, courteous).violations.empty());
  CHECK(courteous == knowledge_threshold_map(p, not_all_common_distributed(agents, 1)));
}

TEST_CASE("courteous rule rejects other shapes") {
  CHECK_THROWS_AS(courteous_map(binary_input_complex(default_agents(3))), Error);
  CHECK_THROWS_AS(courteous_map(build_scenario("ub2", default_agents(3))), Error);
  CHECK_THROWS_AS(courteous_map(build_scenario("ub1", default_agents(2))), Error);
}

TEST_CASE("knowledge threshold decides 0 exactly where phi is known") {
  const auto agents = default_agents(3);
  auto p = build_scenario("ub1", agents);
  const auto phi = not_all_common_distributed(agents, 1);
  auto d = knowledge_threshold_map(p, phi);
  Evaluator e(p);
  for (VertexIndex v = 0; v < p.vertices().size(); ++v) {
    const FacetIndex some = p.facets_containing(v).front();
    const bool knows = e.holds(some, Formula::knows(p.vertex(v).color, phi));
    CHECK(d.values[v] == (knows ? 0 : 1));
  }
}

TEST_CASE("knowledge threshold on test-and-set fails at three facets") {
  const auto agents = default_agents(3);
  auto p = build_scenario("tas1", agents);
  auto t = make_task("majority0", agents);
  auto r = validate_decision_map(t, p, knowledge_threshold_map(p, not_all_common_distributed(agents, 1)));
  REQUIRE(r.violations.size() == 3);
  std::set<FacetIndex> carriers;
  for (const auto& v : r.violations) {
    auto sorted = v.decided;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 1});
    carriers.insert(p.carrier(v.facet));
    // Every agent keeps its own input, which the task forbids here.
    for (AgentIndex a = 0; a < 3; ++a) {
      auto input = t.input.vertex(t.input.vertex_of(p.carrier(v.facet), a)).state.value();
      CHECK(v.decided[a] == input);
    }
  }
  CHECK(carriers == std::set<FacetIndex>{3, 5, 6});
}

TEST_CASE("qualifying losers") {
  CHECK(tas_loser_qualifies("a", view("a", {{"a", 1}, {"b", 0}})));
  CHECK(tas_loser_qualifies("c", view("c", {{"a", 1}, {"b", 0}, {"c", 1}})));
  CHECK_FALSE(tas_loser_qualifies("a", view("a", {{"a", 1}})));
  CHECK_FALSE(tas_loser_qualifies("a", view("a", {{"a", 0}, {"b", 1}})));
  CHECK_FALSE(tas_loser_qualifies("a", view("a", {{"a", 1}, {"b", 1}})));
  CHECK_FALSE(tas_loser_qualifies("b", view("a", {{"a", 1}, {"b", 0}})));
  CHECK_FALSE(tas_loser_qualifies("a", LocalState::initial("a", 1)));
}

TEST_CASE("two-round test-and-set rule") {
  const auto agents = default_agents(3);
  auto refined = build_scenario("tas1+partial", agents);
  auto t = make_task("majority0", agents);
  auto d = tas_two_round_map(refined);
  CHECK(validate_decision_map(t, refined, d).violations.empty());
  CHECK(collapse_partial_round(refined) == build_scenario("tas1", agents));

  auto one_round = knowledge_threshold_map(build_scenario("tas1", agents), not_all_common_distributed(agents, 1));
  auto tas = build_scenario("tas1", agents);
  for (VertexIndex v = 0; v < refined.vertices().size(); ++v) {
    const auto& s = refined.vertex(v).state;
    if (s.round() == 2) {
      // Refined losers: 0 when the extra round showed someone else.
      CHECK(d.values[v] == (s.received().size() > 1 ? 0 : 1));
    } else {
      for (VertexIndex u = 0; u < tas.vertices().size(); ++u) {
        if (tas.vertex(u).state == s) CHECK(d.values[v] == one_round.values[u]);
      }
    }
  }
  CHECK_THROWS_AS(tas_two_round_map(binary_input_complex(agents)), Error);
  // Two full rounds refine every agent, winners included.
  try {
    tas_two_round_map(build_scenario("is2", agents));
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
}
