#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/local_state.hpp"

namespace chromatic {

/// Reflexive communication graph, stored as one in-neighbourhood mask per
/// receiving agent.
class CommGraph {
 public:
  /// Adds self-loops; throws TooManyAgents.
  explicit CommGraph(std::vector<AgentMask> in_neighbourhoods);

  std::size_t agent_count() const noexcept { return in_.size(); }
  AgentMask in_neighbours(AgentIndex receiver) const { return in_.at(receiver); }
  bool has_edge(AgentIndex sender, AgentIndex receiver) const {
    return (in_neighbours(receiver) >> sender) & 1U;
  }

  friend auto operator<=>(const CommGraph&, const CommGraph&) = default;

 private:
  std::vector<AgentMask> in_;
};

enum class ModelKind { UnreliableBroadcast, ImmediateSnapshot, TestAndSet };

/// "ub", "is", "tas"; throws UnknownKind.
ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind) noexcept;

struct CommModel {
  std::string name;
  std::vector<std::string> agents;
  std::vector<CommGraph> graphs;
};

/// Built-in models over `agents`:
///  - ub: one graph per nonempty set B of successful broadcasters; every
///    agent hears exactly B (plus itself).
///  - is: one graph per ordered partition; an agent hears its own block and
///    every earlier block.
///  - tas: one graph per winner x and ordered partition of the losers; x hears
///    only itself, losers hear x plus the immediate-snapshot pattern among
///    losers.
/// Graphs are sorted and deduplicated. Throws TooFewAgents below 2 agents.
CommModel make_model(ModelKind kind, const std::vector<std::string>& agents);
CommModel make_model(std::string_view kind, const std::vector<std::string>& agents);

/// Ordered partitions of the agents in `mask`, each as a list of blocks.
std::vector<std::vector<AgentMask>> ordered_partitions(AgentMask mask);

/// One full-information round: every facet combined with every graph of the
/// model. Vertices with the same agent and state are merged across all
/// executions. Carrier: inherited, or the source facet index when `c` has none.
ChromaticComplex one_round(const ChromaticComplex& c, const CommModel& m);

ChromaticComplex iterate_rounds(const ChromaticComplex& c, const CommModel& m, int rounds);

using QualifyPredicate = std::function<bool(const std::string& agent, const LocalState& state)>;

/// Extra immediate-snapshot round run only by the qualifying agents of each
/// facet. Facets with at most one qualifying agent are kept as they are; other
/// agents keep their states verbatim.
ChromaticComplex partial_round(const ChromaticComplex& c, const QualifyPredicate& qualifies);

/// Canonical string of a state (same as state.canonical()).
inline const std::string& canonical_state(const LocalState& s) { return s.canonical(); }

}  // namespace chromatic
