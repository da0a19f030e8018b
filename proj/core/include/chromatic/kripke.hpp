#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/complex.hpp"

namespace chromatic {

using WorldPair = std::pair<std::string, std::string>;

/// Worlds plus one equivalence relation per agent, stored as a class id per
/// world. Class ids are numbered by first appearance in world order.
class EpistemicFrame {
 public:
  /// Equivalence closure of the given pairs. Throws MalformedInput for
  /// duplicate or unknown worlds, UnknownAgent for relations on other agents.
  static EpistemicFrame from_generators(std::vector<std::string> agents,
                                        std::vector<std::string> worlds,
                                        const std::map<std::string, std::vector<WorldPair>>& relations);

  /// The pairs must already form an equivalence relation per agent (every
  /// reflexive, symmetric and transitive pair listed); throws NotEquivalence.
  static EpistemicFrame from_relations(std::vector<std::string> agents,
                                       std::vector<std::string> worlds,
                                       const std::map<std::string, std::vector<WorldPair>>& relations);

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  std::size_t world_index(const std::string& world) const;

  /// Class id of world w under agent a's relation.
  std::size_t class_of(AgentIndex a, std::size_t w) const { return classes_.at(a).at(w); }
  bool related(AgentIndex a, std::size_t w1, std::size_t w2) const {
    return class_of(a, w1) == class_of(a, w2);
  }
  /// Non-identity related pairs (w < w' in world order) for agent a.
  std::vector<WorldPair> generators(AgentIndex a) const;

  /// No two distinct worlds are related by every agent.
  bool is_proper() const;

 private:
  EpistemicFrame(std::vector<std::string> agents, std::vector<std::string> worlds);

  std::vector<std::string> agents_;
  std::vector<std::string> worlds_;
  std::map<std::string, std::size_t> world_index_;
  std::vector<std::vector<std::size_t>> classes_;
};

/// One vertex per (agent, class), with id "<agent>@<least world id of the
/// class>"; one facet per world. Throws ImproperFrame.
ChromaticComplex frame_to_complex(const EpistemicFrame& f);

/// Worlds w0, w1, ... are the facets in order; w ~a w' iff they share their
/// a-colored vertex.
EpistemicFrame complex_to_frame(const ChromaticComplex& c);

}  // namespace chromatic
