#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/formula.hpp"

namespace chromatic {

/// Input complex I, output complex O (vertices carry decisions) and the
/// specification Delta as a list of allowed output facets per input facet.
struct Task {
  std::string name;
  ChromaticComplex input;
  ChromaticComplex output;
  std::vector<std::vector<FacetIndex>> delta;
};

/// One vertex "a:0"/"a:1" per agent and value, one facet per assignment.
ChromaticComplex binary_input_complex(const std::vector<std::string>& agents);

enum class TaskKind { Consensus, Majority0 };

/// "consensus" or "majority0"; throws UnknownKind.
TaskKind parse_task_kind(std::string_view name);
std::string_view to_string(TaskKind kind) noexcept;

/// Binary consensus, or 0-majority consensus (outputs either agree or hold a
/// strict majority of 0s). In both, an output is allowed for an input iff its
/// values all occur among the inputs.
Task make_task(TaskKind kind, const std::vector<std::string>& agents);
Task make_task(std::string_view kind, const std::vector<std::string>& agents);

/// Decision values of an output facet, in agent order.
std::vector<int> decision_tuple(const ChromaticComplex& output, FacetIndex o);

/// I[O]: one facet per (i, o) with o in Delta(i); each vertex pairs an input
/// vertex with its decision. Carrier = i.
ChromaticComplex product_update(const Task& t);

/// Decision per vertex of a protocol complex, indexed by vertex.
struct DecisionMap {
  std::vector<int> values;

  friend bool operator==(const DecisionMap&, const DecisionMap&) = default;
};

enum class ViolationReason { NotAnOutputFacet, NotInDelta };

struct Violation {
  FacetIndex facet;
  std::vector<int> decided;
  ViolationReason reason;
};

struct ValidationResult {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Checks every facet of `p`: its decided tuple must be an output facet in
/// Delta(carrier). Throws MissingCarrier, PartialMap, AgentSetMismatch.
ValidationResult validate_decision_map(const Task& t, const ChromaticComplex& p, const DecisionMap& d);

struct SearchResult {
  std::optional<DecisionMap> map;
  std::uint64_t nodes_explored = 0;

  bool solvable() const noexcept { return map.has_value(); }
};

/// Backtracking over vertices in canonical order, smallest value first, with
/// generalized arc consistency on every facet's table of allowed tuples.
/// Returns the first map found, or no map. `nodes_explored` counts the root
/// plus every tentative assignment tried.
SearchResult search_decision_map(const Task& t, const ChromaticComplex& p);

enum class ObstructionVerdict { Confirmed, NotAnObstruction };

struct ObstructionReport {
  Formula formula;
  FacetIndex witness_world = 0;
  FacetIndex witness_carrier = 0;
  bool positivity_ok = false;
  bool false_at_witness = false;
  bool true_at_all_images = false;
  std::size_t images_checked = 0;
  ObstructionVerdict verdict = ObstructionVerdict::NotAnObstruction;
};

/// Knowledge-gain obstruction check for world `w` of `p`: confirmed iff the
/// formula is positive, false at w, and true at every facet of I[O] over w's
/// carrier.
ObstructionReport check_obstruction(const Task& t, const ChromaticComplex& p, const Formula& phi,
                                    FacetIndex w);

}  // namespace chromatic
