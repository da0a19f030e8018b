#include "chromatic/algorithms.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "chromatic/error.hpp"
#include "chromatic/scenarios.hpp"

namespace chromatic {

namespace {

/// A view made only of input states, as produced by one full-information round.
bool is_one_round_view(const LocalState& s) {
  if (s.is_initial() || s.received_from(s.agent()) == nullptr) return false;
  for (const auto& entry : s.received()) {
    if (!entry.state.is_initial()) return false;
  }
  return true;
}

/// A view from the extra round: every entry is a one-round view.
bool is_refined_view(const LocalState& s) {
  if (s.is_initial() || s.received_from(s.agent()) == nullptr) return false;
  for (const auto& entry : s.received()) {
    if (!is_one_round_view(entry.state)) return false;
  }
  return true;
}

}  // namespace

DecisionMap courteous_map(const ChromaticComplex& p) {
  if (p.agent_count() != 3) {
    throw Error(ErrorCode::NotOneRoundUB, "the courteous rule is defined for three agents");
  }
  DecisionMap map;
  map.values.reserve(p.vertices().size());
  for (const Vertex& vertex : p.vertices()) {
    const LocalState& s = vertex.state;
    if (!is_one_round_view(s)) {
      throw Error(ErrorCode::NotOneRoundUB, "vertex '" + vertex.id + "' holds " + s.canonical());
    }
    const int own = s.received_from(s.agent())->value();
    int zeros = 0;
    int ones = 0;
    for (const auto& entry : s.received()) {
      const int x = entry.state.value();
      if (x == 0) {
        ++zeros;
      } else if (x == 1) {
        ++ones;
      } else {
        throw Error(ErrorCode::NotOneRoundUB, "non-binary input in " + s.canonical());
      }
    }
    const auto seen = s.received().size();
    int decision;
    if (zeros == 0 || ones == 0) {
      decision = own;
    } else if (seen == 2) {
      decision = 1 - own;
    } else if (zeros > ones) {
      decision = 0;
    } else {
      decision = 1 - own;
    }
    map.values.push_back(decision);
  }
  return map;
}

DecisionMap knowledge_threshold_map(const ChromaticComplex& p, const Formula& phi,
                                    const Valuation& valuation) {
  Evaluator evaluator(p, valuation);
  const auto& truth = evaluator.truth(phi);
  DecisionMap map;
  map.values.reserve(p.vertices().size());
  for (VertexIndex v = 0; v < p.vertices().size(); ++v) {
    bool known = true;
    for (FacetIndex w : p.facets_containing(v)) known = known && truth[w];
    map.values.push_back(known ? 0 : 1);
  }
  return map;
}

bool tas_loser_qualifies(const std::string& agent, const LocalState& state) {
  if (state.agent() != agent || !is_one_round_view(state)) return false;
  if (state.received_from(agent)->value() != 1) return false;
  if (state.received().size() < 2) return false;
  std::set<int> seen;
  for (const auto& entry : state.received()) seen.insert(entry.state.value());
  return seen == std::set<int>{0, 1};
}

ChromaticComplex collapse_partial_round(const ChromaticComplex& refined) {
  ComplexBuilder builder(refined.agents());
  std::vector<std::size_t> collapsed(refined.vertices().size());
  for (VertexIndex v = 0; v < refined.vertices().size(); ++v) {
    const Vertex& vertex = refined.vertex(v);
    const LocalState& s = vertex.state;
    AgentIndex a = refined.require_agent(vertex.color);
    if (is_one_round_view(s)) {
      collapsed[v] = builder.intern(a, s);
    } else if (is_refined_view(s)) {
      collapsed[v] = builder.intern(a, *s.received_from(s.agent()));
    } else {
      throw Error(ErrorCode::ShapeMismatch, "vertex '" + vertex.id + "' holds " + s.canonical());
    }
  }
  for (FacetIndex w = 0; w < refined.facet_count(); ++w) {
    std::vector<std::size_t> by_agent;
    for (VertexIndex v : refined.facet(w)) by_agent.push_back(collapsed[v]);
    std::optional<FacetIndex> carried;
    if (refined.has_carrier()) carried = refined.carrier(w);
    builder.add_facet(std::move(by_agent), carried);
  }
  return std::move(builder).finish();
}

DecisionMap tas_two_round_map(const ChromaticComplex& refined) {
  for (const Vertex& vertex : refined.vertices()) {
    const LocalState& s = vertex.state;
    if (is_refined_view(s) && !tas_loser_qualifies(vertex.color, *s.received_from(s.agent()))) {
      throw Error(ErrorCode::ShapeMismatch, "vertex '" + vertex.id + "' ran the extra round without qualifying");
    }
  }
  // The test-and-set winner never runs the extra round.
  for (FacetIndex w = 0; w < refined.facet_count(); ++w) {
    const auto& facet = refined.facet(w);
    if (std::all_of(facet.begin(), facet.end(),
                    [&](VertexIndex v) { return is_refined_view(refined.vertex(v).state); })) {
      throw Error(ErrorCode::ShapeMismatch, "facet " + std::to_string(w) + " has no agent left at one round");
    }
  }
  const ChromaticComplex one_round = collapse_partial_round(refined);
  const Formula phi = not_all_common_distributed(refined.agents(), 1);
  const DecisionMap first = knowledge_threshold_map(one_round, phi);

  std::unordered_map<std::string, int> by_state;
  for (VertexIndex v = 0; v < one_round.vertices().size(); ++v) {
    by_state.emplace(one_round.vertex(v).state.canonical(), first.values[v]);
  }

  DecisionMap map;
  map.values.reserve(refined.vertices().size());
  for (const Vertex& vertex : refined.vertices()) {
    const LocalState& s = vertex.state;
    if (is_refined_view(s)) {
      map.values.push_back(s.received().size() > 1 ? 0 : 1);
    } else {
      map.values.push_back(by_state.at(s.canonical()));
    }
  }
  return map;
}

}  // namespace chromatic
