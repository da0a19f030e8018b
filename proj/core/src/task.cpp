#include "chromatic/task.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>

#include "chromatic/error.hpp"
#include "chromatic/semantics.hpp"

namespace chromatic {

namespace {

constexpr std::size_t kMaxTaskAgents = 16;

void check_task_agents(const std::vector<std::string>& agents) {
  if (agents.empty() || agents.size() > kMaxTaskAgents) {
    throw Error(ErrorCode::UnsupportedAgentCount,
                std::to_string(agents.size()) + " agents (supported: 1.." +
                    std::to_string(kMaxTaskAgents) + ")");
  }
}

std::set<int> value_set(const std::vector<int>& values) { return {values.begin(), values.end()}; }

std::vector<int> input_tuple(const ChromaticComplex& input, FacetIndex i) {
  std::vector<int> out;
  for (VertexIndex v : input.facet(i)) out.push_back(input.vertex(v).state.value());
  return out;
}

}  // namespace

ChromaticComplex binary_input_complex(const std::vector<std::string>& agents) {
  check_task_agents(agents);
  const std::size_t n = agents.size();
  ComplexBuilder builder(agents);
  std::vector<std::array<std::size_t, 2>> vertex(n);
  for (AgentIndex a = 0; a < n; ++a) {
    for (int value : {0, 1}) vertex[a][value] = builder.intern(a, LocalState::initial(agents[a], value));
  }
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<std::size_t> by_agent(n);
    for (AgentIndex a = 0; a < n; ++a) by_agent[a] = vertex[a][(bits >> (n - 1 - a)) & 1U];
    builder.add_facet(std::move(by_agent));
  }
  return std::move(builder).finish();
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "consensus") return TaskKind::Consensus;
  if (name == "majority0") return TaskKind::Majority0;
  throw Error(ErrorCode::UnknownKind, "task '" + std::string(name) + "'");
}

std::string_view to_string(TaskKind kind) noexcept {
  return kind == TaskKind::Consensus ? "consensus" : "majority0";
}

Task make_task(TaskKind kind, const std::vector<std::string>& agents) {
  check_task_agents(agents);
  const std::size_t n = agents.size();
  Task task;
  task.name = std::string(to_string(kind));
  task.input = binary_input_complex(agents);

  ComplexBuilder builder(agents);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const auto ones = static_cast<std::size_t>(std::popcount(bits));
    const bool agreed = ones == 0 || ones == n;
    const bool zero_majority = 2 * (n - ones) > n;
    if (!agreed && !(kind == TaskKind::Majority0 && zero_majority)) continue;
    std::vector<std::size_t> by_agent(n);
    for (AgentIndex a = 0; a < n; ++a) {
      int value = static_cast<int>((bits >> (n - 1 - a)) & 1U);
      by_agent[a] = builder.intern(a, LocalState::initial(agents[a], value), value);
    }
    builder.add_facet(std::move(by_agent));
  }
  task.output = std::move(builder).finish();

  task.delta.resize(task.input.facet_count());
  for (FacetIndex i = 0; i < task.input.facet_count(); ++i) {
    const auto inputs = value_set(input_tuple(task.input, i));
    for (FacetIndex o = 0; o < task.output.facet_count(); ++o) {
      const auto outputs = value_set(decision_tuple(task.output, o));
      if (std::includes(inputs.begin(), inputs.end(), outputs.begin(), outputs.end())) {
        task.delta[i].push_back(o);
      }
    }
  }
  return task;
}

Task make_task(std::string_view kind, const std::vector<std::string>& agents) {
  return make_task(parse_task_kind(kind), agents);
}

std::vector<int> decision_tuple(const ChromaticComplex& output, FacetIndex o) {
  std::vector<int> out;
  for (VertexIndex v : output.facet(o)) {
    const Vertex& vertex = output.vertex(v);
    if (!vertex.decision) throw Error(ErrorCode::ShapeMismatch, "output vertex '" + vertex.id + "' has no decision");
    out.push_back(*vertex.decision);
  }
  return out;
}

ChromaticComplex product_update(const Task& t) {
  const std::size_t n = t.input.agent_count();
  ComplexBuilder builder(t.input.agents());
  for (FacetIndex i = 0; i < t.input.facet_count(); ++i) {
    auto facet = t.input.facet(i);
    for (FacetIndex o : t.delta.at(i)) {
      auto decided = decision_tuple(t.output, o);
      std::vector<std::size_t> by_agent(n);
      for (AgentIndex a = 0; a < n; ++a) {
        by_agent[a] = builder.intern(a, t.input.vertex(facet[a]).state, decided[a]);
      }
      builder.add_facet(std::move(by_agent), i);
    }
  }
  return std::move(builder).finish();
}

namespace {

void check_protocol(const Task& t, const ChromaticComplex& p) {
  if (p.agents() != t.input.agents()) {
    throw Error(ErrorCode::AgentSetMismatch, "protocol complex and task use different agent lists");
  }
  if (!p.has_carrier()) throw Error(ErrorCode::MissingCarrier, "protocol complex has no carrier");
  for (FacetIndex i : p.carrier_map()) {
    if (i >= t.delta.size()) {
      throw Error(ErrorCode::InvalidCarrier, "carrier points at input facet " + std::to_string(i));
    }
  }
}

}  // namespace

ValidationResult validate_decision_map(const Task& t, const ChromaticComplex& p, const DecisionMap& d) {
  check_protocol(t, p);
  if (d.values.size() != p.vertices().size()) {
    throw Error(ErrorCode::PartialMap, std::to_string(d.values.size()) + " decisions for " +
                                           std::to_string(p.vertices().size()) + " vertices");
  }
  std::map<std::vector<int>, FacetIndex> output_facets;
  for (FacetIndex o = 0; o < t.output.facet_count(); ++o) output_facets.emplace(decision_tuple(t.output, o), o);

  ValidationResult result;
  for (FacetIndex w = 0; w < p.facet_count(); ++w) {
    std::vector<int> decided;
    for (VertexIndex v : p.facet(w)) decided.push_back(d.values[v]);
    auto it = output_facets.find(decided);
    if (it == output_facets.end()) {
      result.violations.push_back({w, std::move(decided), ViolationReason::NotAnOutputFacet});
      continue;
    }
    const auto& allowed = t.delta[p.carrier(w)];
    if (std::find(allowed.begin(), allowed.end(), it->second) == allowed.end()) {
      result.violations.push_back({w, std::move(decided), ViolationReason::NotInDelta});
    }
  }
  result.valid = result.violations.empty();
  return result;
}

// ---------------------------------------------------------------------------
// Search

namespace {

using Domain = std::uint64_t;

class DecisionSearch {
 public:
  DecisionSearch(const Task& t, const ChromaticComplex& p) : p_(p) {
    std::set<int> values;
    for (const auto& v : t.output.vertices()) {
      if (v.decision) values.insert(*v.decision);
    }
    values_.assign(values.begin(), values.end());
    if (values_.size() > 64) throw Error(ErrorCode::MalformedInput, "more than 64 decision values");

    tables_.resize(t.delta.size());
    for (FacetIndex i = 0; i < t.delta.size(); ++i) {
      for (FacetIndex o : t.delta[i]) {
        std::vector<std::uint8_t> row;
        for (int value : decision_tuple(t.output, o)) row.push_back(index_of(value));
        tables_[i].push_back(std::move(row));
      }
    }
    const Domain full = values_.size() == 64 ? ~Domain{0} : (Domain{1} << values_.size()) - 1;
    domains_.assign(p.vertices().size(), full);
    queued_.assign(p.facet_count(), 0);
  }

  SearchResult run() {
    SearchResult result;
    std::vector<FacetIndex> all(p_.facet_count());
    for (FacetIndex w = 0; w < all.size(); ++w) all[w] = w;
    ++nodes_;
    if (propagate(all) && descend(0)) {
      DecisionMap map;
      for (Domain d : domains_) map.values.push_back(values_[std::countr_zero(d)]);
      result.map = std::move(map);
    }
    result.nodes_explored = nodes_;
    return result;
  }

 private:
  std::uint8_t index_of(int value) const {
    return static_cast<std::uint8_t>(std::lower_bound(values_.begin(), values_.end(), value) - values_.begin());
  }

  void narrow(VertexIndex v, Domain d, std::vector<FacetIndex>& pending) {
    trail_.emplace_back(v, domains_[v]);
    domains_[v] = d;
    for (FacetIndex w : p_.facets_containing(v)) pending.push_back(w);
  }

  /// Generalized arc consistency over the facet tables; false on wipe-out.
  bool propagate(std::vector<FacetIndex> pending) {
    std::vector<FacetIndex> queue;
    auto enqueue_all = [&](std::vector<FacetIndex>& from) {
      for (FacetIndex w : from) {
        if (!queued_[w]) {
          queued_[w] = 1;
          queue.push_back(w);
        }
      }
      from.clear();
    };
    enqueue_all(pending);
    bool ok = true;
    std::size_t head = 0;
    while (head < queue.size()) {
      FacetIndex w = queue[head++];
      queued_[w] = 0;
      if (!ok) continue;
      auto facet = p_.facet(w);
      std::vector<Domain> support(facet.size(), 0);
      bool any = false;
      for (const auto& row : tables_[p_.carrier(w)]) {
        bool consistent = true;
        for (std::size_t a = 0; a < facet.size() && consistent; ++a) {
          consistent = (domains_[facet[a]] >> row[a]) & 1U;
        }
        if (!consistent) continue;
        any = true;
        for (std::size_t a = 0; a < facet.size(); ++a) support[a] |= Domain{1} << row[a];
      }
      if (!any) {
        ok = false;
        continue;
      }
      for (std::size_t a = 0; a < facet.size(); ++a) {
        Domain narrowed = domains_[facet[a]] & support[a];
        if (narrowed != domains_[facet[a]]) narrow(facet[a], narrowed, pending);
      }
      enqueue_all(pending);
    }
    return ok;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      domains_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  bool descend(VertexIndex from) {
    VertexIndex v = from;
    while (v < domains_.size() && std::popcount(domains_[v]) == 1) ++v;
    if (v == domains_.size()) return true;
    const Domain options = domains_[v];
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!((options >> k) & 1U)) continue;
      ++nodes_;
      const std::size_t mark = trail_.size();
      std::vector<FacetIndex> pending;
      narrow(v, Domain{1} << k, pending);
      if (propagate(std::move(pending)) && descend(v + 1)) return true;
      undo(mark);
    }
    return false;
  }

  const ChromaticComplex& p_;
  std::vector<int> values_;
  std::vector<std::vector<std::vector<std::uint8_t>>> tables_;
  std::vector<Domain> domains_;
  std::vector<std::pair<VertexIndex, Domain>> trail_;
  std::vector<char> queued_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult search_decision_map(const Task& t, const ChromaticComplex& p) {
  check_protocol(t, p);
  return DecisionSearch(t, p).run();
}

ObstructionReport check_obstruction(const Task& t, const ChromaticComplex& p, const Formula& phi,
                                    FacetIndex w) {
  ObstructionReport report{phi};
  report.witness_world = w;
  report.witness_carrier = p.carrier(w);
  report.positivity_ok = is_positive(phi);

  Evaluator protocol(p);
  report.false_at_witness = !protocol.holds(w, phi);

  const ChromaticComplex images = product_update(t);
  Evaluator outputs(images);
  const auto& truth = outputs.truth(phi);
  report.true_at_all_images = true;
  for (FacetIndex o = 0; o < images.facet_count(); ++o) {
    if (images.carrier(o) != report.witness_carrier) continue;
    ++report.images_checked;
    if (!truth[o]) report.true_at_all_images = false;
  }

  report.verdict = report.positivity_ok && report.false_at_witness && report.true_at_all_images
                       ? ObstructionVerdict::Confirmed
                       : ObstructionVerdict::NotAnObstruction;
  return report;
}

}  // namespace chromatic
