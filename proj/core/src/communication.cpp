#include "chromatic/communication.hpp"

#include <algorithm>
#include <bit>

#include "chromatic/error.hpp"

namespace chromatic {

CommGraph::CommGraph(std::vector<AgentMask> in_neighbourhoods) : in_(std::move(in_neighbourhoods)) {
  if (in_.size() > kMaxAgents) throw Error(ErrorCode::TooManyAgents, "communication graph");
  for (AgentIndex a = 0; a < in_.size(); ++a) in_[a] |= AgentMask{1} << a;
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "ub") return ModelKind::UnreliableBroadcast;
  if (name == "is") return ModelKind::ImmediateSnapshot;
  if (name == "tas") return ModelKind::TestAndSet;
  throw Error(ErrorCode::UnknownKind, "communication model '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::UnreliableBroadcast: return "ub";
    case ModelKind::ImmediateSnapshot: return "is";
    case ModelKind::TestAndSet: return "tas";
  }
  return "?";
}

std::vector<std::vector<AgentMask>> ordered_partitions(AgentMask mask) {
  std::vector<std::vector<AgentMask>> out;
  if (mask == 0) {
    out.emplace_back();
    return out;
  }
  // First block: any nonempty subset; the rest partitions the remainder.
  for (AgentMask first = mask; first != 0; first = (first - 1) & mask) {
    for (auto& rest : ordered_partitions(mask & ~first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

namespace {

/// Receivers in block k hear blocks 0..k.
void apply_snapshot(const std::vector<AgentMask>& blocks, std::vector<AgentMask>& in) {
  AgentMask seen = 0;
  for (AgentMask block : blocks) {
    seen |= block;
    for (AgentIndex a = 0; a < in.size(); ++a) {
      if (block & (AgentMask{1} << a)) in[a] |= seen;
    }
  }
}

}  // namespace

CommModel make_model(ModelKind kind, const std::vector<std::string>& agents) {
  const std::size_t n = agents.size();
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "built-in models need at least 2 agents");
  if (n > 20) throw Error(ErrorCode::TooManyAgents, "built-in models support at most 20 agents");
  const AgentMask all = (AgentMask{1} << n) - 1;

  std::vector<CommGraph> graphs;
  switch (kind) {
    case ModelKind::UnreliableBroadcast:
      for (AgentMask broadcasters = 1; broadcasters <= all; ++broadcasters) {
        graphs.emplace_back(std::vector<AgentMask>(n, broadcasters));
      }
      break;
    case ModelKind::ImmediateSnapshot:
      for (const auto& blocks : ordered_partitions(all)) {
        std::vector<AgentMask> in(n, 0);
        apply_snapshot(blocks, in);
        graphs.emplace_back(std::move(in));
      }
      break;
    case ModelKind::TestAndSet:
      for (AgentIndex winner = 0; winner < n; ++winner) {
        const AgentMask winner_bit = AgentMask{1} << winner;
        for (const auto& blocks : ordered_partitions(all & ~winner_bit)) {
          std::vector<AgentMask> in(n, 0);
          apply_snapshot(blocks, in);
          for (AgentIndex a = 0; a < n; ++a) {
            if (a != winner) in[a] |= winner_bit;
          }
          graphs.emplace_back(std::move(in));
        }
      }
      break;
  }
  std::sort(graphs.begin(), graphs.end());
  graphs.erase(std::unique(graphs.begin(), graphs.end()), graphs.end());
  return CommModel{std::string(to_string(kind)), agents, std::move(graphs)};
}

CommModel make_model(std::string_view kind, const std::vector<std::string>& agents) {
  return make_model(parse_model_kind(kind), agents);
}

namespace {

/// Model graphs re-indexed to the complex's agent order.
std::vector<CommGraph> aligned_graphs(const ChromaticComplex& c, const CommModel& m) {
  const auto& agents = c.agents();
  std::vector<std::string> a = agents, b = m.agents;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorCode::AgentSetMismatch, "model '" + m.name + "' is over other agents");
  std::vector<AgentIndex> to_complex(m.agents.size());
  for (AgentIndex i = 0; i < m.agents.size(); ++i) to_complex[i] = c.require_agent(m.agents[i]);
  std::vector<CommGraph> out;
  for (const auto& g : m.graphs) {
    if (g.agent_count() != m.agents.size()) {
      throw Error(ErrorCode::AgentSetMismatch, "graph size differs from model agent count");
    }
    std::vector<AgentMask> in(agents.size(), 0);
    for (AgentIndex r = 0; r < m.agents.size(); ++r) {
      for (AgentIndex s = 0; s < m.agents.size(); ++s) {
        if (g.has_edge(s, r)) in[to_complex[r]] |= AgentMask{1} << to_complex[s];
      }
    }
    out.emplace_back(std::move(in));
  }
  return out;
}

LocalState next_state(const ChromaticComplex& c, FacetIndex w, AgentIndex receiver, AgentMask heard) {
  std::vector<LocalState::Entry> received;
  auto facet = c.facet(w);
  for (AgentIndex s = 0; s < facet.size(); ++s) {
    if (heard & (AgentMask{1} << s)) {
      received.push_back({c.agents()[s], c.vertex(facet[s]).state});
    }
  }
  return LocalState::after_round(c.agents()[receiver], std::move(received));
}

}  // namespace

ChromaticComplex one_round(const ChromaticComplex& c, const CommModel& m) {
  const auto graphs = aligned_graphs(c, m);
  const std::size_t n = c.agent_count();
  ComplexBuilder builder(c.agents());
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    const FacetIndex source = c.has_carrier() ? c.carrier(w) : w;
    for (const auto& g : graphs) {
      std::vector<std::size_t> by_agent(n);
      for (AgentIndex a = 0; a < n; ++a) {
        by_agent[a] = builder.intern(a, next_state(c, w, a, g.in_neighbours(a)));
      }
      builder.add_facet(std::move(by_agent), source);
    }
  }
  return std::move(builder).finish();
}

ChromaticComplex iterate_rounds(const ChromaticComplex& c, const CommModel& m, int rounds) {
  if (rounds < 0) throw Error(ErrorCode::MalformedInput, "negative round count");
  ChromaticComplex current = c;
  for (int r = 0; r < rounds; ++r) current = one_round(current, m);
  return current;
}

ChromaticComplex partial_round(const ChromaticComplex& c, const QualifyPredicate& qualifies) {
  const std::size_t n = c.agent_count();
  std::vector<char> vertex_qualifies(c.vertices().size());
  for (VertexIndex v = 0; v < c.vertices().size(); ++v) {
    const Vertex& vertex = c.vertex(v);
    vertex_qualifies[v] = qualifies(vertex.color, vertex.state) ? 1 : 0;
  }

  ComplexBuilder builder(c.agents());
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    auto facet = c.facet(w);
    std::optional<FacetIndex> source;
    if (c.has_carrier()) source = c.carrier(w);

    AgentMask q = 0;
    for (AgentIndex a = 0; a < n; ++a) {
      if (vertex_qualifies[facet[a]]) q |= AgentMask{1} << a;
    }
    if (std::popcount(q) <= 1) q = 0;
    std::vector<std::size_t> kept(n);
    for (AgentIndex a = 0; a < n; ++a) {
      if (!(q & (AgentMask{1} << a))) kept[a] = builder.intern(a, c.vertex(facet[a]).state);
    }
    if (q == 0) {
      builder.add_facet(std::move(kept), source);
      continue;
    }
    for (const auto& blocks : ordered_partitions(q)) {
      std::vector<AgentMask> in(n, 0);
      apply_snapshot(blocks, in);
      std::vector<std::size_t> by_agent = kept;
      for (AgentIndex a = 0; a < n; ++a) {
        if (q & (AgentMask{1} << a)) by_agent[a] = builder.intern(a, next_state(c, w, a, in[a]));
      }
      builder.add_facet(std::move(by_agent), source);
    }
  }
  return std::move(builder).finish();
}

}  // namespace chromatic
