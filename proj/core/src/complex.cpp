#include "chromatic/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "chromatic/error.hpp"

namespace chromatic {

namespace {

struct FaceHash {
  std::size_t operator()(const std::vector<VertexIndex>& face) const noexcept {
    std::size_t h = face.size();
    for (VertexIndex v : face) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using FaceBuckets = std::unordered_map<std::vector<VertexIndex>, std::vector<FacetIndex>, FaceHash>;

std::vector<VertexIndex> face_of(std::span<const VertexIndex> facet, AgentMask group) {
  std::vector<VertexIndex> face;
  for (AgentIndex a = 0; a < facet.size(); ++a) {
    if (group & (AgentMask{1} << a)) face.push_back(facet[a]);
  }
  return face;
}

FaceBuckets bucket_by_face(const ChromaticComplex& c, AgentMask group) {
  FaceBuckets buckets;
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    buckets[face_of(c.facet(w), group)].push_back(w);
  }
  return buckets;
}

void check_agents(const std::vector<std::string>& agents) {
  if (agents.size() > kMaxAgents) {
    throw Error(ErrorCode::TooManyAgents, std::to_string(agents.size()) + " agents");
  }
  std::set<std::string_view> seen;
  for (const auto& a : agents) {
    if (!is_valid_agent_name(a)) throw Error(ErrorCode::UnknownAgent, "invalid agent name '" + a + "'");
    if (!seen.insert(a).second) throw Error(ErrorCode::MalformedInput, "duplicate agent '" + a + "'");
  }
}

void check_groups(const ChromaticComplex& c, std::span<const AgentMask> alpha) {
  if (alpha.empty()) throw Error(ErrorCode::EmptyGroup, "empty group family");
  AgentMask all = c.agent_count() == kMaxAgents ? ~AgentMask{0}
                                                : (AgentMask{1} << c.agent_count()) - 1;
  for (AgentMask g : alpha) {
    if (g == 0) throw Error(ErrorCode::EmptyGroup, "empty group");
    if ((g & ~all) != 0) throw Error(ErrorCode::UnknownAgent, "group mentions an unknown agent");
  }
}

}  // namespace

std::string Vertex::label() const {
  if (!decision) return state.canonical();
  return state.canonical() + "=>" + std::to_string(*decision);
}

// ---------------------------------------------------------------------------
// ChromaticComplex

std::optional<AgentIndex> ChromaticComplex::agent_index(std::string_view name) const noexcept {
  for (AgentIndex i = 0; i < agents_.size(); ++i) {
    if (agents_[i] == name) return i;
  }
  return std::nullopt;
}

AgentIndex ChromaticComplex::require_agent(std::string_view name) const {
  if (auto i = agent_index(name)) return *i;
  throw Error(ErrorCode::UnknownAgent, "agent '" + std::string(name) + "' is not in the complex");
}

AgentMask ChromaticComplex::group_mask(std::span<const std::string> group) const {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "empty group");
  AgentMask mask = 0;
  for (const auto& name : group) mask |= AgentMask{1} << require_agent(name);
  return mask;
}

std::optional<VertexIndex> ChromaticComplex::find_vertex(std::string_view id) const {
  for (VertexIndex v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].id == id) return v;
  }
  return std::nullopt;
}

std::span<const VertexIndex> ChromaticComplex::facet(FacetIndex w) const {
  if (w >= facets_.size()) {
    throw Error(ErrorCode::UnknownFacet, "facet " + std::to_string(w) + " of " +
                                             std::to_string(facets_.size()));
  }
  return facets_[w];
}

std::optional<FacetIndex> ChromaticComplex::find_facet(std::span<const std::string> vertex_ids) const {
  if (vertex_ids.size() != agents_.size()) return std::nullopt;
  std::vector<VertexIndex> tuple(agents_.size());
  std::vector<bool> filled(agents_.size(), false);
  for (const auto& id : vertex_ids) {
    auto v = find_vertex(id);
    if (!v) return std::nullopt;
    AgentIndex a = *agent_index(vertices_[*v].color);
    if (filled[a]) return std::nullopt;
    filled[a] = true;
    tuple[a] = *v;
  }
  auto it = std::lower_bound(facets_.begin(), facets_.end(), tuple);
  if (it == facets_.end() || *it != tuple) return std::nullopt;
  return static_cast<FacetIndex>(it - facets_.begin());
}

std::span<const FacetIndex> ChromaticComplex::facets_containing(VertexIndex v) const {
  if (v >= vertices_.size()) {
    throw Error(ErrorCode::DanglingVertexRef, "vertex " + std::to_string(v));
  }
  return std::span<const FacetIndex>(incidence_).subspan(
      incidence_offsets_[v], incidence_offsets_[v + 1] - incidence_offsets_[v]);
}

FacetIndex ChromaticComplex::carrier(FacetIndex w) const {
  if (!has_carrier()) throw Error(ErrorCode::MissingCarrier, "complex has no carrier annotation");
  facet(w);
  return carrier_[w];
}

bool operator==(const ChromaticComplex& lhs, const ChromaticComplex& rhs) {
  if (lhs.agents_ != rhs.agents_ || lhs.facets_ != rhs.facets_ || lhs.carrier_ != rhs.carrier_ ||
      lhs.vertices_.size() != rhs.vertices_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < lhs.vertices_.size(); ++i) {
    const Vertex& a = lhs.vertices_[i];
    const Vertex& b = rhs.vertices_[i];
    if (a.id != b.id || a.color != b.color || a.label() != b.label()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ComplexBuilder

ComplexBuilder::ComplexBuilder(std::vector<std::string> agents) : agents_(std::move(agents)) {
  check_agents(agents_);
}

std::size_t ComplexBuilder::add_vertex(Vertex vertex) {
  AgentIndex agent = agents_.size();
  for (AgentIndex a = 0; a < agents_.size(); ++a) {
    if (agents_[a] == vertex.color) agent = a;
  }
  if (agent == agents_.size()) {
    throw Error(ErrorCode::UnknownAgent,
                "vertex '" + vertex.id + "' has color '" + vertex.color + "' outside the agent set");
  }
  if (vertex.id.empty()) throw Error(ErrorCode::MalformedInput, "empty vertex id");
  if (!ids_.insert(vertex.id).second) {
    throw Error(ErrorCode::DuplicateVertexId, "vertex id '" + vertex.id + "'");
  }
  vertices_.push_back(std::move(vertex));
  vertex_agent_.push_back(agent);
  return vertices_.size() - 1;
}

std::size_t ComplexBuilder::intern(AgentIndex agent, LocalState state, std::optional<int> decision) {
  if (agent >= agents_.size()) throw Error(ErrorCode::UnknownAgent, "agent index out of range");
  if (state.agent() != agents_[agent]) {
    throw Error(ErrorCode::MalformedInput,
                "state of '" + state.agent() + "' placed on a '" + agents_[agent] + "' vertex");
  }
  Vertex vertex{std::string{}, agents_[agent], std::move(state), decision};
  std::string key = std::to_string(agent) + '\x1f' + vertex.label();
  auto [it, inserted] = interned_.emplace(std::move(key), vertices_.size());
  if (inserted) {
    vertices_.push_back(std::move(vertex));
    vertex_agent_.push_back(agent);
  }
  return it->second;
}

void ComplexBuilder::add_facet(std::vector<std::size_t> by_agent, std::optional<FacetIndex> carrier) {
  if (by_agent.size() != agents_.size()) {
    throw Error(ErrorCode::ImpureComplex, "facet with " + std::to_string(by_agent.size()) +
                                              " vertices in a " + std::to_string(agents_.size()) +
                                              "-agent complex");
  }
  for (AgentIndex a = 0; a < by_agent.size(); ++a) {
    if (by_agent[a] >= vertices_.size()) throw Error(ErrorCode::DanglingVertexRef, "builder vertex");
    if (vertex_agent_[by_agent[a]] != a) {
      throw Error(ErrorCode::IllColoredFacet, "vertex placed under the wrong agent");
    }
  }
  facets_.push_back(std::move(by_agent));
  carriers_.push_back(carrier);
}

void ComplexBuilder::add_facet_unordered(std::span<const std::size_t> vertices,
                                         std::optional<FacetIndex> carrier) {
  std::vector<std::size_t> by_agent(agents_.size(), vertices_.size());
  for (std::size_t v : vertices) {
    if (v >= vertices_.size()) throw Error(ErrorCode::DanglingVertexRef, "builder vertex");
    AgentIndex a = vertex_agent_[v];
    if (by_agent[a] != vertices_.size()) {
      throw Error(ErrorCode::IllColoredFacet,
                  "two vertices colored '" + agents_[a] + "' in one facet");
    }
    by_agent[a] = v;
  }
  if (vertices.size() != agents_.size()) {
    throw Error(ErrorCode::ImpureComplex, "facet with " + std::to_string(vertices.size()) +
                                              " vertices in a " + std::to_string(agents_.size()) +
                                              "-agent complex");
  }
  add_facet(std::move(by_agent), carrier);
}

ChromaticComplex ComplexBuilder::finish() && {
  const std::size_t nv = vertices_.size();

  std::vector<bool> used(nv, false);
  for (const auto& f : facets_) {
    for (std::size_t v : f) used[v] = true;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!used[v]) {
      throw Error(ErrorCode::IsolatedVertex,
                  "vertex '" + (vertices_[v].id.empty() ? vertices_[v].label() : vertices_[v].id) +
                      "' lies in no facet");
    }
  }

  const bool any_carrier = std::any_of(carriers_.begin(), carriers_.end(),
                                       [](const auto& c) { return c.has_value(); });
  const bool all_carrier = std::all_of(carriers_.begin(), carriers_.end(),
                                       [](const auto& c) { return c.has_value(); });
  if (any_carrier && !all_carrier) {
    throw Error(ErrorCode::InvalidCarrier, "carrier annotation is partial");
  }

  std::vector<std::string> labels(nv);
  for (std::size_t v = 0; v < nv; ++v) labels[v] = vertices_[v].label();
  std::vector<std::size_t> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (vertex_agent_[a] != vertex_agent_[b]) return vertex_agent_[a] < vertex_agent_[b];
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return vertices_[a].id < vertices_[b].id;
  });

  ChromaticComplex c;
  c.agents_ = std::move(agents_);
  std::vector<VertexIndex> remap(nv);
  std::vector<std::size_t> per_color(c.agents_.size(), 0);
  c.vertices_.reserve(nv);
  for (std::size_t rank = 0; rank < nv; ++rank) {
    std::size_t v = order[rank];
    remap[v] = static_cast<VertexIndex>(rank);
    Vertex vertex = std::move(vertices_[v]);
    std::size_t k = per_color[vertex_agent_[v]]++;
    if (vertex.id.empty()) {
      vertex.id = vertex.color + "_" + std::to_string(k);
      if (!ids_.insert(vertex.id).second) {
        throw Error(ErrorCode::DuplicateVertexId, "generated id '" + vertex.id + "' collides");
      }
    }
    c.vertices_.push_back(std::move(vertex));
  }

  std::vector<std::pair<std::vector<VertexIndex>, std::optional<FacetIndex>>> facets;
  facets.reserve(facets_.size());
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    std::vector<VertexIndex> f(facets_[i].size());
    for (std::size_t a = 0; a < f.size(); ++a) f[a] = remap[facets_[i][a]];
    facets.emplace_back(std::move(f), carriers_[i]);
  }
  std::sort(facets.begin(), facets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::optional<FacetIndex> last_carrier;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (!c.facets_.empty() && facets[i].first == c.facets_.back()) {
      if (facets[i].second != last_carrier) {
        throw Error(ErrorCode::InvalidCarrier, "duplicate facet with conflicting carriers");
      }
      continue;
    }
    last_carrier = facets[i].second;
    c.facets_.push_back(std::move(facets[i].first));
    if (all_carrier && any_carrier) c.carrier_.push_back(*facets[i].second);
  }

  c.incidence_offsets_.assign(nv + 1, 0);
  for (const auto& f : c.facets_) {
    for (VertexIndex v : f) ++c.incidence_offsets_[v + 1];
  }
  std::partial_sum(c.incidence_offsets_.begin(), c.incidence_offsets_.end(),
                   c.incidence_offsets_.begin());
  c.incidence_.resize(c.incidence_offsets_.back());
  std::vector<std::size_t> cursor(c.incidence_offsets_.begin(), c.incidence_offsets_.end() - 1);
  for (FacetIndex w = 0; w < c.facets_.size(); ++w) {
    for (VertexIndex v : c.facets_[w]) c.incidence_[cursor[v]++] = w;
  }
  return c;
}

// ---------------------------------------------------------------------------

ChromaticComplex build_complex(std::vector<std::string> agents, std::vector<Vertex> vertices,
                               const std::vector<std::vector<std::string>>& facets,
                               const std::vector<FacetIndex>& carrier) {
  ComplexBuilder builder(std::move(agents));
  std::unordered_map<std::string, std::size_t> by_id;
  for (auto& v : vertices) {
    if (by_id.count(v.id)) throw Error(ErrorCode::DuplicateVertexId, "vertex id '" + v.id + "'");
    std::string id = v.id;
    by_id.emplace(std::move(id), builder.add_vertex(std::move(v)));
  }
  if (!carrier.empty() && carrier.size() != facets.size()) {
    throw Error(ErrorCode::InvalidCarrier, "carrier has " + std::to_string(carrier.size()) +
                                               " entries for " + std::to_string(facets.size()) +
                                               " facets");
  }
  for (std::size_t i = 0; i < facets.size(); ++i) {
    std::vector<std::size_t> members;
    for (const auto& id : facets[i]) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw Error(ErrorCode::DanglingVertexRef, "vertex id '" + id + "'");
      members.push_back(it->second);
    }
    std::optional<FacetIndex> carried;
    if (!carrier.empty()) carried = carrier[i];
    builder.add_facet_unordered(members, carried);
  }
  return std::move(builder).finish();
}

FacetIntersection facet_intersection(const ChromaticComplex& c, FacetIndex w1, FacetIndex w2) {
  auto f1 = c.facet(w1);
  auto f2 = c.facet(w2);
  FacetIntersection out;
  for (AgentIndex a = 0; a < f1.size(); ++a) {
    if (f1[a] == f2[a]) {
      out.vertices.push_back(f1[a]);
      out.colors.push_back(c.agents()[a]);
    }
  }
  return out;
}

std::vector<FacetIndex> reachable_worlds(const ChromaticComplex& c, FacetIndex start,
                                         std::span<const AgentMask> alpha) {
  c.facet(start);
  check_groups(c, alpha);
  std::vector<FaceBuckets> buckets;
  buckets.reserve(alpha.size());
  for (AgentMask g : alpha) buckets.push_back(bucket_by_face(c, g));

  std::vector<bool> seen(c.facet_count(), false);
  std::deque<FacetIndex> queue{start};
  seen[start] = true;
  std::vector<FacetIndex> out;
  while (!queue.empty()) {
    FacetIndex w = queue.front();
    queue.pop_front();
    out.push_back(w);
    for (std::size_t g = 0; g < alpha.size(); ++g) {
      for (FacetIndex next : buckets[g].at(face_of(c.facet(w), alpha[g]))) {
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FacetIndex> reachable_worlds(const ChromaticComplex& c, FacetIndex start,
                                         const GroupFamily& alpha) {
  if (alpha.empty()) throw Error(ErrorCode::EmptyGroup, "empty group family");
  std::vector<AgentMask> masks;
  for (const auto& group : alpha) masks.push_back(c.group_mask(group));
  return reachable_worlds(c, start, masks);
}

std::vector<std::size_t> world_components(const ChromaticComplex& c,
                                          std::span<const AgentMask> alpha) {
  check_groups(c, alpha);
  std::vector<std::size_t> parent(c.facet_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (AgentMask g : alpha) {
    std::unordered_map<std::vector<VertexIndex>, FacetIndex, FaceHash> first;
    for (FacetIndex w = 0; w < c.facet_count(); ++w) {
      auto [it, inserted] = first.emplace(face_of(c.facet(w), g), w);
      if (!inserted) {
        std::size_t a = find(it->second);
        std::size_t b = find(w);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::size_t> ids(c.facet_count());
  std::vector<std::size_t> label(c.facet_count(), c.facet_count());
  std::size_t next = 0;
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    std::size_t root = find(w);
    if (label[root] == c.facet_count()) label[root] = next++;
    ids[w] = label[root];
  }
  return ids;
}

std::vector<std::size_t> face_counts(const ChromaticComplex& c) {
  const std::size_t n = c.agent_count();
  if (n > 20) throw Error(ErrorCode::TooManyAgents, "face enumeration supports at most 20 agents");
  std::vector<std::unordered_set<std::vector<VertexIndex>, FaceHash>> faces(n);
  for (const auto& f : c.facets()) {
    for (AgentMask subset = 1; subset < (AgentMask{1} << n); ++subset) {
      std::vector<VertexIndex> face = face_of(f, subset);
      faces[face.size() - 1].insert(std::move(face));
    }
  }
  std::vector<std::size_t> counts(n);
  for (std::size_t k = 0; k < n; ++k) counts[k] = faces[k].size();
  return counts;
}

long long euler_characteristic(const ChromaticComplex& c) {
  long long chi = 0;
  auto counts = face_counts(c);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[k]);
  }
  return chi;
}

ChromaticComplex restrict_to_facets(const ChromaticComplex& c, std::span<const FacetIndex> keep) {
  std::vector<bool> selected(c.facet_count(), false);
  for (FacetIndex w : keep) {
    c.facet(w);
    selected[w] = true;
  }
  ComplexBuilder builder(c.agents());
  std::vector<std::size_t> remap(c.vertices().size(), SIZE_MAX);
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    if (!selected[w]) continue;
    std::vector<std::size_t> by_agent;
    for (VertexIndex v : c.facet(w)) {
      if (remap[v] == SIZE_MAX) remap[v] = builder.add_vertex(c.vertex(v));
      by_agent.push_back(remap[v]);
    }
    std::optional<FacetIndex> carried;
    if (c.has_carrier()) carried = c.carrier(w);
    builder.add_facet(std::move(by_agent), carried);
  }
  return std::move(builder).finish();
}

std::vector<AgentMask> pair_groups(std::size_t agent_count) {
  std::vector<AgentMask> out;
  for (std::size_t i = 0; i < agent_count; ++i) {
    for (std::size_t j = i + 1; j < agent_count; ++j) {
      out.push_back((AgentMask{1} << i) | (AgentMask{1} << j));
    }
  }
  return out;
}

}  // namespace chromatic
