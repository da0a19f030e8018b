#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "chromatic/local_state.hpp"

namespace chromatic {

using AgentIndex = std::size_t;
using VertexIndex = std::uint32_t;
using FacetIndex = std::size_t;
/// Bit i set means agents()[i] belongs to the group.
using AgentMask = std::uint64_t;

inline constexpr std::size_t kMaxAgents = 64;

/// A local state placed in a complex. `decision` is only set on output and
/// product-update complexes.
struct Vertex {
  std::string id;
  std::string color;
  LocalState state;
  std::optional<int> decision;

  /// Sort key within a color class: canonical state, plus "=>d" when decided.
  std::string label() const;
};

/// A group of agents, by name.
using Group = std::vector<std::string>;
/// A family of groups (the parameter of common distributed knowledge).
using GroupFamily = std::vector<Group>;

/// Pure chromatic simplicial complex stored by its facets.
///
/// Vertices are ordered by (agent position, label, id); each facet is stored
/// as one vertex per agent, in agent order, and facets are sorted
/// lexicographically. Faces are never stored. The optional carrier maps each
/// facet to the index of the input facet it descends from.
class ChromaticComplex {
 public:
  ChromaticComplex() = default;

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::optional<AgentIndex> agent_index(std::string_view name) const noexcept;
  /// Throws UnknownAgent.
  AgentIndex require_agent(std::string_view name) const;
  /// Throws EmptyGroup / UnknownAgent.
  AgentMask group_mask(std::span<const std::string> group) const;

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;

  std::size_t facet_count() const noexcept { return facets_.size(); }
  const std::vector<std::vector<VertexIndex>>& facets() const noexcept { return facets_; }
  /// Throws UnknownFacet.
  std::span<const VertexIndex> facet(FacetIndex w) const;
  VertexIndex vertex_of(FacetIndex w, AgentIndex agent) const { return facet(w)[agent]; }
  /// Index of the facet made of exactly these vertex ids, if any.
  std::optional<FacetIndex> find_facet(std::span<const std::string> vertex_ids) const;

  /// Facets containing v, in increasing order.
  std::span<const FacetIndex> facets_containing(VertexIndex v) const;

  bool has_carrier() const noexcept { return !carrier_.empty(); }
  const std::vector<FacetIndex>& carrier_map() const noexcept { return carrier_; }
  /// Throws MissingCarrier.
  FacetIndex carrier(FacetIndex w) const;

  int dimension() const noexcept { return static_cast<int>(agents_.size()) - 1; }

  friend bool operator==(const ChromaticComplex& lhs, const ChromaticComplex& rhs);

 private:
  friend class ComplexBuilder;

  std::vector<std::string> agents_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<VertexIndex>> facets_;
  std::vector<FacetIndex> carrier_;
  // incidence_offsets_[v]..incidence_offsets_[v+1] indexes incidence_.
  std::vector<std::size_t> incidence_offsets_;
  std::vector<FacetIndex> incidence_;
};

/// Accumulates vertices and facets, then canonicalizes into a complex.
///
/// `add_vertex` keeps the caller's id; `intern` merges vertices with equal
/// (color, label) and leaves the id to be assigned by `finish` as
/// "<agent>_<k>", k counting within the color class in canonical order.
class ComplexBuilder {
 public:
  explicit ComplexBuilder(std::vector<std::string> agents);

  const std::vector<std::string>& agents() const noexcept { return agents_; }

  std::size_t add_vertex(Vertex vertex);
  std::size_t intern(AgentIndex agent, LocalState state, std::optional<int> decision = {});
  /// One builder vertex per agent, in agent order.
  void add_facet(std::vector<std::size_t> by_agent, std::optional<FacetIndex> carrier = {});
  /// Vertices in any order; colors must be distinct and cover every agent.
  void add_facet_unordered(std::span<const std::size_t> vertices,
                           std::optional<FacetIndex> carrier = {});

  ChromaticComplex finish() &&;

 private:
  std::vector<std::string> agents_;
  std::vector<Vertex> vertices_;
  std::vector<AgentIndex> vertex_agent_;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::optional<FacetIndex>> carriers_;
  std::unordered_map<std::string, std::size_t> interned_;
  std::unordered_set<std::string> ids_;
};

/// Validates and canonicalizes a complex given by explicit vertex ids.
/// Facet order in `facets` is the order `carrier` refers to.
ChromaticComplex build_complex(std::vector<std::string> agents, std::vector<Vertex> vertices,
                               const std::vector<std::vector<std::string>>& facets,
                               const std::vector<FacetIndex>& carrier = {});

struct FacetIntersection {
  std::vector<VertexIndex> vertices;
  std::vector<std::string> colors;
};

FacetIntersection facet_intersection(const ChromaticComplex& c, FacetIndex w1, FacetIndex w2);

/// Facets reachable from `start` by steps between facets that share the
/// A-colored face for some group A in `alpha`. Sorted ascending.
std::vector<FacetIndex> reachable_worlds(const ChromaticComplex& c, FacetIndex start,
                                         const GroupFamily& alpha);

/// Mask form of reachable_worlds; groups must be nonempty.
std::vector<FacetIndex> reachable_worlds(const ChromaticComplex& c, FacetIndex start,
                                         std::span<const AgentMask> alpha);

/// Component id per facet for the step relation of reachable_worlds. Ids are
/// numbered by smallest member facet.
std::vector<std::size_t> world_components(const ChromaticComplex& c,
                                          std::span<const AgentMask> alpha);

/// Alternating sum of face counts over every dimension.
long long euler_characteristic(const ChromaticComplex& c);

/// Number of distinct faces with k+1 vertices, for k = 0..dimension.
std::vector<std::size_t> face_counts(const ChromaticComplex& c);

/// Sub-complex on the listed facets (any order, duplicates ignored). Vertex
/// ids and carrier entries are kept; unused vertices are dropped.
ChromaticComplex restrict_to_facets(const ChromaticComplex& c, std::span<const FacetIndex> keep);

/// All 2-agent groups of the complex's agents, as masks.
std::vector<AgentMask> pair_groups(std::size_t agent_count);

}  // namespace chromatic
