#pragma once

#include <string>

#include "chromatic/complex.hpp"
#include "chromatic/formula.hpp"
#include "chromatic/local_state.hpp"
#include "chromatic/semantics.hpp"
#include "chromatic/task.hpp"

namespace chromatic {

/// Courteous rule for one round of unreliable broadcast over three agents
/// with binary inputs. From the set v of (agent, input) pairs received:
///   all values equal    -> that value
///   |v| = 2             -> 1 - own input
///   |v| = 3, more 0s    -> 0
///   |v| = 3, more 1s    -> 1 - own input
/// Throws NotOneRoundUB when a vertex is not a one-round view of that shape.
DecisionMap courteous_map(const ChromaticComplex& p);

/// Decide 0 at vertices whose agent knows `phi` (phi holds at every facet
/// through the vertex), otherwise 1.
DecisionMap knowledge_threshold_map(const ChromaticComplex& p, const Formula& phi,
                                    const Valuation& valuation = Valuation::local_state());

/// A test-and-set loser that started with 1 and saw both values: own input 1,
/// heard at least one other agent (winners hear only themselves), and the set
/// of inputs seen is exactly {0, 1}.
bool tas_loser_qualifies(const std::string& agent, const LocalState& state);

/// Inverse of the extra round: every refined vertex is replaced by its
/// one-round state, giving back the complex the extra round was applied to.
ChromaticComplex collapse_partial_round(const ChromaticComplex& refined);

/// Two-round test-and-set rule on a complex produced by
/// partial_round(one-round T&S complex, tas_loser_qualifies):
///  - agents that ran the extra round decide 0 if they heard another agent in
///    it, otherwise 1;
///  - everyone else, including a qualifying agent whose facet was left
///    unrefined, decides by the one-round knowledge-threshold rule with
///    Phi = CD over all pairs of (not all inputs 1).
/// Throws ShapeMismatch for vertices that are neither one-round nor refined
/// views, for refined vertices whose one-round state does not qualify, and for
/// facets where every agent ran the extra round.
DecisionMap tas_two_round_map(const ChromaticComplex& refined);

}  // namespace chromatic
