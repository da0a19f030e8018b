#include "chromatic/serialize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "chromatic/error.hpp"

namespace chromatic {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) malformed(std::string(what) + " must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string colors_of(const ChromaticComplex& c, const std::vector<VertexIndex>& face) {
  std::string out;
  for (VertexIndex v : face) {
    if (!out.empty()) out += ",";
    out += c.vertex(v).color;
  }
  return out;
}

}  // namespace

Json complex_to_json(const ChromaticComplex& c) {
  Json j;
  j["agents"] = c.agents();
  Json vertices = Json::array();
  for (const Vertex& v : c.vertices()) {
    Json item{{"id", v.id}, {"color", v.color}, {"state", v.state.canonical()}};
    if (v.decision) item["decision"] = *v.decision;
    vertices.push_back(std::move(item));
  }
  j["vertices"] = std::move(vertices);
  Json facets = Json::array();
  for (const auto& facet : c.facets()) {
    Json ids = Json::array();
    for (VertexIndex v : facet) ids.push_back(c.vertex(v).id);
    facets.push_back(std::move(ids));
  }
  j["facets"] = std::move(facets);
  if (c.has_carrier()) {
    Json carrier = Json::object();
    for (FacetIndex w = 0; w < c.facet_count(); ++w) carrier[std::to_string(w)] = c.carrier(w);
    j["carrier"] = std::move(carrier);
  }
  return j;
}

ChromaticComplex complex_from_json(const Json& j) {
  auto agents = string_list(field(j, "agents"), "agents");
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) malformed("vertices must be an array");
  std::vector<Vertex> vertices;
  for (const auto& item : vs) {
    const Json& id = field(item, "id");
    const Json& color = field(item, "color");
    const Json& state = field(item, "state");
    if (!id.is_string() || !color.is_string() || !state.is_string()) {
      malformed("vertex id, color and state must be strings");
    }
    Vertex v{id.get<std::string>(), color.get<std::string>(), parse_state(state.get<std::string>()),
             std::nullopt};
    if (item.contains("decision")) {
      if (!item.at("decision").is_number_integer()) malformed("decision must be an integer");
      v.decision = item.at("decision").get<int>();
    }
    vertices.push_back(std::move(v));
  }
  const Json& fs = field(j, "facets");
  if (!fs.is_array()) malformed("facets must be an array");
  std::vector<std::vector<std::string>> facets;
  for (const auto& facet : fs) facets.push_back(string_list(facet, "facet"));
  std::vector<FacetIndex> carrier;
  if (j.contains("carrier")) {
    const Json& cj = j.at("carrier");
    if (!cj.is_object()) malformed("carrier must be an object");
    carrier.assign(facets.size(), 0);
    std::vector<char> seen(facets.size(), 0);
    for (const auto& [key, value] : cj.items()) {
      std::size_t w = 0;
      try {
        std::size_t used = 0;
        w = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::logic_error&) {
        malformed("carrier key '" + key + "' is not a facet index");
      }
      if (w >= facets.size()) throw Error(ErrorCode::UnknownFacet, "carrier key " + key);
      if (!value.is_number_unsigned()) malformed("carrier values must be facet indices");
      carrier[w] = value.get<FacetIndex>();
      seen[w] = 1;
    }
    for (std::size_t w = 0; w < seen.size(); ++w) {
      if (!seen[w]) throw Error(ErrorCode::MissingCarrier, "facet " + std::to_string(w));
    }
  }
  return build_complex(std::move(agents), std::move(vertices), facets, carrier);
}

std::string complex_to_dot(const ChromaticComplex& c) {
  std::ostringstream out;
  out << "graph dual {\n";
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    out << "  w" << w << " [label=\"";
    bool first = true;
    for (VertexIndex v : c.facet(w)) {
      out << (first ? "" : " ") << c.vertex(v).id;
      first = false;
    }
    out << "\"];\n";
  }
  for (FacetIndex w1 = 0; w1 < c.facet_count(); ++w1) {
    // Only facets sharing some vertex with w1 can be adjacent.
    std::vector<FacetIndex> neighbours;
    for (VertexIndex v : c.facet(w1)) {
      for (FacetIndex w2 : c.facets_containing(v)) {
        if (w2 > w1) neighbours.push_back(w2);
      }
    }
    std::sort(neighbours.begin(), neighbours.end());
    neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
    for (FacetIndex w2 : neighbours) {
      out << "  w" << w1 << " -- w" << w2 << " [label=\""
          << colors_of(c, facet_intersection(c, w1, w2).vertices) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json frame_to_json(const EpistemicFrame& f) {
  Json j;
  j["agents"] = f.agents();
  j["worlds"] = f.worlds();
  Json relations = Json::object();
  for (AgentIndex a = 0; a < f.agents().size(); ++a) {
    Json pairs = Json::array();
    for (const auto& [w1, w2] : f.generators(a)) pairs.push_back({w1, w2});
    relations[f.agents()[a]] = std::move(pairs);
  }
  j["relations"] = std::move(relations);
  return j;
}

EpistemicFrame frame_from_json(const Json& j) {
  auto worlds = string_list(field(j, "worlds"), "worlds");
  const Json& rj = field(j, "relations");
  if (!rj.is_object()) malformed("relations must be an object");
  std::vector<std::string> agents;
  if (j.contains("agents")) {
    agents = string_list(j.at("agents"), "agents");
  } else {
    for (const auto& [agent, pairs] : rj.items()) agents.push_back(agent);
  }
  std::map<std::string, std::vector<WorldPair>> relations;
  for (const auto& [agent, pairs] : rj.items()) {
    if (!pairs.is_array()) malformed("relation of '" + agent + "' must be an array");
    auto& out = relations[agent];
    for (const auto& pair : pairs) {
      auto ws = string_list(pair, "relation pair");
      if (ws.size() != 2) malformed("relation pairs hold two worlds");
      out.emplace_back(ws[0], ws[1]);
    }
  }
  return EpistemicFrame::from_generators(std::move(agents), std::move(worlds), relations);
}

Json decision_map_to_json(const ChromaticComplex& p, const DecisionMap& d) {
  if (d.values.size() != p.vertices().size()) {
    throw Error(ErrorCode::PartialMap, "decision map does not cover the complex");
  }
  Json j = Json::object();
  for (VertexIndex v = 0; v < p.vertices().size(); ++v) j[p.vertex(v).id] = d.values[v];
  return j;
}

DecisionMap decision_map_from_json(const ChromaticComplex& p, const Json& j) {
  if (!j.is_object()) malformed("a decision map is an object");
  DecisionMap d;
  d.values.assign(p.vertices().size(), 0);
  std::vector<char> seen(p.vertices().size(), 0);
  for (const auto& [id, value] : j.items()) {
    auto v = p.find_vertex(id);
    if (!v) malformed("decision for unknown vertex '" + id + "'");
    if (!value.is_number_integer()) malformed("decision for '" + id + "' is not an integer");
    d.values[*v] = value.get<int>();
    seen[*v] = 1;
  }
  for (VertexIndex v = 0; v < seen.size(); ++v) {
    if (!seen[v]) throw Error(ErrorCode::PartialMap, "no decision for vertex '" + p.vertex(v).id + "'");
  }
  return d;
}

Json certificate_to_json(const SearchResult& r) {
  return Json{{"verdict", r.solvable() ? "solvable" : "unsolvable"}, {"nodesExplored", r.nodes_explored}};
}

Json validation_to_json(const ChromaticComplex& p, const ValidationResult& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json ids = Json::array();
    for (VertexIndex x : p.facet(v.facet)) ids.push_back(p.vertex(x).id);
    violations.push_back({{"facet", v.facet},
                          {"vertices", std::move(ids)},
                          {"decided", v.decided},
                          {"reason", v.reason == ViolationReason::NotAnOutputFacet ? "not-an-output-facet"
                                                                                   : "not-in-delta"}});
  }
  return Json{{"valid", r.valid}, {"violations", std::move(violations)}};
}

Json obstruction_to_json(const ObstructionReport& r) {
  return Json{{"formula", r.formula.to_string()},
              {"witnessWorld", r.witness_world},
              {"witnessCarrier", r.witness_carrier},
              {"positivityOk", r.positivity_ok},
              {"falseAtWitness", r.false_at_witness},
              {"trueAtAllImages", r.true_at_all_images},
              {"imagesChecked", r.images_checked},
              {"verdict", r.verdict == ObstructionVerdict::Confirmed ? "obstruction-confirmed"
                                                                      : "not-an-obstruction"}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace chromatic
