#include "chromatic/kripke.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chromatic/error.hpp"

namespace chromatic {

namespace {

std::vector<std::size_t> renumber(const std::vector<std::size_t>& roots) {
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(roots.size());
  for (std::size_t r : roots) out.push_back(ids.emplace(r, ids.size()).first->second);
  return out;
}

}  // namespace

EpistemicFrame::EpistemicFrame(std::vector<std::string> agents, std::vector<std::string> worlds)
    : agents_(std::move(agents)), worlds_(std::move(worlds)) {
  if (agents_.empty()) throw Error(ErrorCode::TooFewAgents, "a frame needs at least one agent");
  if (worlds_.empty()) throw Error(ErrorCode::EmptyModel, "a frame needs at least one world");
  if (std::set<std::string>(agents_.begin(), agents_.end()).size() != agents_.size()) {
    throw Error(ErrorCode::MalformedInput, "duplicate agent");
  }
  for (std::size_t w = 0; w < worlds_.size(); ++w) {
    if (!world_index_.emplace(worlds_[w], w).second) {
      throw Error(ErrorCode::MalformedInput, "duplicate world '" + worlds_[w] + "'");
    }
  }
}

std::size_t EpistemicFrame::world_index(const std::string& world) const {
  auto it = world_index_.find(world);
  if (it == world_index_.end()) throw Error(ErrorCode::MalformedInput, "unknown world '" + world + "'");
  return it->second;
}

EpistemicFrame EpistemicFrame::from_generators(
    std::vector<std::string> agents, std::vector<std::string> worlds,
    const std::map<std::string, std::vector<WorldPair>>& relations) {
  EpistemicFrame f(std::move(agents), std::move(worlds));
  const std::size_t n = f.worlds_.size();
  std::vector<std::vector<std::size_t>> parents(f.agents_.size(), std::vector<std::size_t>(n));
  for (auto& p : parents) std::iota(p.begin(), p.end(), std::size_t{0});
  auto find = [](std::vector<std::size_t>& p, std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (const auto& [agent, pairs] : relations) {
    auto it = std::find(f.agents_.begin(), f.agents_.end(), agent);
    if (it == f.agents_.end()) throw Error(ErrorCode::UnknownAgent, "'" + agent + "'");
    auto& p = parents[static_cast<std::size_t>(it - f.agents_.begin())];
    for (const auto& [w1, w2] : pairs) {
      std::size_t r1 = find(p, f.world_index(w1));
      std::size_t r2 = find(p, f.world_index(w2));
      if (r1 != r2) p[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  for (auto& p : parents) {
    std::vector<std::size_t> roots(n);
    for (std::size_t w = 0; w < n; ++w) roots[w] = find(p, w);
    f.classes_.push_back(renumber(roots));
  }
  return f;
}

EpistemicFrame EpistemicFrame::from_relations(
    std::vector<std::string> agents, std::vector<std::string> worlds,
    const std::map<std::string, std::vector<WorldPair>>& relations) {
  EpistemicFrame f = from_generators(std::move(agents), std::move(worlds), relations);
  const std::size_t n = f.worlds_.size();
  for (AgentIndex a = 0; a < f.agents_.size(); ++a) {
    std::set<std::pair<std::size_t, std::size_t>> listed;
    if (auto it = relations.find(f.agents_[a]); it != relations.end()) {
      for (const auto& [w1, w2] : it->second) listed.emplace(f.world_index(w1), f.world_index(w2));
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (f.related(a, x, y) && !listed.contains({x, y})) {
          const char* property = x == y                    ? "reflexive"
                                 : listed.contains({y, x}) ? "symmetric"
                                                           : "transitive";
          throw Error(ErrorCode::NotEquivalence, "relation of '" + f.agents_[a] + "' is not " +
                                                     property + " at (" + f.worlds_[x] + ", " +
                                                     f.worlds_[y] + ")");
        }
      }
    }
  }
  return f;
}

std::vector<WorldPair> EpistemicFrame::generators(AgentIndex a) const {
  std::vector<WorldPair> out;
  for (std::size_t x = 0; x < worlds_.size(); ++x) {
    for (std::size_t y = x + 1; y < worlds_.size(); ++y) {
      if (related(a, x, y)) out.emplace_back(worlds_[x], worlds_[y]);
    }
  }
  return out;
}

bool EpistemicFrame::is_proper() const {
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t w = 0; w < worlds_.size(); ++w) {
    std::vector<std::size_t> key;
    for (const auto& c : classes_) key.push_back(c[w]);
    if (!seen.insert(std::move(key)).second) return false;
  }
  return true;
}

ChromaticComplex frame_to_complex(const EpistemicFrame& f) {
  if (!f.is_proper()) throw Error(ErrorCode::ImproperFrame, "two worlds are indistinguishable to every agent");
  const auto& worlds = f.worlds();
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::string>> facets(worlds.size());
  for (AgentIndex a = 0; a < f.agents().size(); ++a) {
    const std::string& agent = f.agents()[a];
    // Representative of each class: its least world id.
    std::map<std::size_t, std::size_t> rep;
    for (std::size_t w = 0; w < worlds.size(); ++w) {
      auto [it, fresh] = rep.emplace(f.class_of(a, w), w);
      if (!fresh && worlds[w] < worlds[it->second]) it->second = w;
    }
    for (const auto& [cls, w] : rep) {
      vertices.push_back({agent + "@" + worlds[w], agent,
                          LocalState::initial(agent, static_cast<int>(w)), std::nullopt});
    }
    for (std::size_t w = 0; w < worlds.size(); ++w) {
      facets[w].push_back(agent + "@" + worlds[rep.at(f.class_of(a, w))]);
    }
  }
  return build_complex(f.agents(), std::move(vertices), facets);
}

EpistemicFrame complex_to_frame(const ChromaticComplex& c) {
  std::vector<std::string> worlds;
  for (FacetIndex w = 0; w < c.facet_count(); ++w) worlds.push_back("w" + std::to_string(w));
  std::map<std::string, std::vector<WorldPair>> relations;
  for (AgentIndex a = 0; a < c.agent_count(); ++a) {
    auto& pairs = relations[c.agents()[a]];
    for (VertexIndex v = 0; v < c.vertices().size(); ++v) {
      auto incident = c.facets_containing(v);
      if (c.vertex(v).color != c.agents()[a]) continue;
      for (std::size_t k = 1; k < incident.size(); ++k) pairs.emplace_back(worlds[incident[0]], worlds[incident[k]]);
    }
  }
  return EpistemicFrame::from_generators(c.agents(), std::move(worlds), relations);
}

}  // namespace chromatic
