#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "chromatic/complex.hpp"
#include "chromatic/kripke.hpp"
#include "chromatic/task.hpp"

namespace chromatic {

using Json = nlohmann::ordered_json;

/// {"agents": [...], "vertices": [{"id", "color", "state", "decision"?}],
///  "facets": [[ids in agent order]], "carrier": {"facet": input facet}}
Json complex_to_json(const ChromaticComplex& c);
/// Throws MalformedInput for documents of the wrong shape, plus every
/// validation error of build_complex.
ChromaticComplex complex_from_json(const Json& j);

/// Dual graph: one node per facet, one edge per pair of facets sharing a
/// nonempty face, labelled with the colors of that face.
std::string complex_to_dot(const ChromaticComplex& c);

/// {"worlds": [...], "relations": {"a": [[w, w'], ...]}}, pairs generating
/// each relation.
Json frame_to_json(const EpistemicFrame& f);
/// Agents are the keys of "relations" (or "agents" when present).
EpistemicFrame frame_from_json(const Json& j);

/// {"vertexId": value, ...} in vertex order.
Json decision_map_to_json(const ChromaticComplex& p, const DecisionMap& d);
/// Throws PartialMap when a vertex is missing, MalformedInput for unknown ids.
DecisionMap decision_map_from_json(const ChromaticComplex& p, const Json& j);

/// {"verdict": "unsolvable", "nodesExplored": N}
Json certificate_to_json(const SearchResult& r);

Json validation_to_json(const ChromaticComplex& p, const ValidationResult& r);

Json obstruction_to_json(const ObstructionReport& r);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace chromatic
