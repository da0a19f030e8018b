#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace oracle {

using namespace chromatic;

std::map<std::string, std::string> colored_facet(const ChromaticComplex& c, FacetIndex w) {
  std::map<std::string, std::string> out;
  for (VertexIndex v : c.facet(w)) out[c.vertex(v).color] = c.vertex(v).id;
  return out;
}

std::vector<std::size_t> face_counts(const ChromaticComplex& c) {
  const std::size_t n = c.agent_count();
  std::vector<std::set<std::set<std::string>>> faces(n);
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    std::vector<std::string> ids;
    for (VertexIndex v : c.facet(w)) ids.push_back(c.vertex(v).id);
    for (std::uint32_t subset = 1; subset < (1U << n); ++subset) {
      std::set<std::string> face;
      for (std::size_t i = 0; i < n; ++i) {
        if (subset & (1U << i)) face.insert(ids[i]);
      }
      faces[face.size() - 1].insert(face);
    }
  }
  std::vector<std::size_t> out;
  for (const auto& level : faces) out.push_back(level.size());
  return out;
}

long long euler(const ChromaticComplex& c) {
  long long sum = 0;
  auto counts = oracle::face_counts(c);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    sum += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[k]);
  }
  return sum;
}

namespace {

bool step(const std::map<std::string, std::string>& x, const std::map<std::string, std::string>& y,
          const std::vector<std::vector<std::string>>& alpha) {
  for (const auto& group : alpha) {
    bool shared = true;
    for (const auto& a : group) shared = shared && x.at(a) == y.at(a);
    if (shared) return true;
  }
  return false;
}

bool input_atom(const ChromaticComplex& c, FacetIndex w, const std::string& agent, int value) {
  auto facet = colored_facet(c, w);
  const Vertex& own = c.vertex(*c.find_vertex(facet.at(agent)));
  if (auto x = own.state.input_of(agent)) return *x == value;
  for (const auto& [color, id] : facet) {
    if (auto x = c.vertex(*c.find_vertex(id)).state.input_of(agent)) return *x == value;
  }
  return false;
}

bool decision_atom(const ChromaticComplex& c, FacetIndex w, const std::string& agent, int value) {
  const Vertex& own = c.vertex(*c.find_vertex(colored_facet(c, w).at(agent)));
  return own.decision && *own.decision == value;
}

bool everywhere(const ChromaticComplex& c, const std::set<FacetIndex>& worlds, const Formula& f) {
  return std::all_of(worlds.begin(), worlds.end(), [&](FacetIndex u) { return holds(c, u, f); });
}

}  // namespace

std::set<FacetIndex> reachable(const ChromaticComplex& c, FacetIndex start,
                               const std::vector<std::vector<std::string>>& alpha) {
  std::vector<std::map<std::string, std::string>> facets;
  for (FacetIndex w = 0; w < c.facet_count(); ++w) facets.push_back(colored_facet(c, w));
  std::set<FacetIndex> seen{start};
  std::deque<FacetIndex> queue{start};
  while (!queue.empty()) {
    FacetIndex w = queue.front();
    queue.pop_front();
    for (FacetIndex u = 0; u < facets.size(); ++u) {
      if (!seen.contains(u) && step(facets[w], facets[u], alpha)) {
        seen.insert(u);
        queue.push_back(u);
      }
    }
  }
  return seen;
}

bool holds(const ChromaticComplex& c, FacetIndex w, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f.atom_key() == AtomKey::Input ? input_atom(c, w, f.agent(), f.value())
                                            : decision_atom(c, w, f.agent(), f.value());
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::Not:
      return !holds(c, w, f.child());
    case FormulaKind::And:
      for (const auto& g : f.children()) {
        if (!holds(c, w, g)) return false;
      }
      return true;
    case FormulaKind::Or:
      for (const auto& g : f.children()) {
        if (holds(c, w, g)) return true;
      }
      return false;
    case FormulaKind::Implies:
      return !holds(c, w, f.children()[0]) || holds(c, w, f.children()[1]);
    case FormulaKind::Knows:
      return everywhere(c, reachable(c, w, {{f.agent()}}), f.child());
    case FormulaKind::Distributed: {
      // One step only: worlds sharing the whole group face with w.
      std::set<FacetIndex> worlds;
      auto here = colored_facet(c, w);
      for (FacetIndex u = 0; u < c.facet_count(); ++u) {
        if (step(here, colored_facet(c, u), {f.group()})) worlds.insert(u);
      }
      return everywhere(c, worlds, f.child());
    }
    case FormulaKind::Common: {
      std::vector<std::vector<std::string>> singletons;
      for (const auto& a : f.group()) singletons.push_back({a});
      return everywhere(c, reachable(c, w, singletons), f.child());
    }
    case FormulaKind::CommonDistributed:
      return everywhere(c, reachable(c, w, f.family()), f.child());
  }
  return false;
}

namespace {

// Visiting order in which every element after the first of its component is
// adjacent to an earlier one, so candidates come from a mapped neighbour.
template <class Neighbours>
std::vector<std::size_t> bfs_order(std::size_t count, Neighbours neighbours) {
  std::vector<std::size_t> order;
  std::vector<char> seen(count, 0);
  for (std::size_t root = 0; root < count; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    order.push_back(root);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (std::size_t n : neighbours(order[i])) {
        if (!seen[n]) {
          seen[n] = 1;
          order.push_back(n);
        }
      }
    }
  }
  return order;
}

struct IsoSearch {
  const ChromaticComplex& x;
  const ChromaticComplex& y;
  std::vector<std::size_t> order;
  std::vector<int> image;
  std::vector<char> used;

  std::vector<std::size_t> neighbours(const ChromaticComplex& c, VertexIndex v) const {
    std::vector<std::size_t> out;
    for (FacetIndex w : c.facets_containing(v)) {
      for (VertexIndex u : c.facet(w)) {
        if (u != v) out.push_back(u);
      }
    }
    return out;
  }

  bool consistent(VertexIndex v) const {
    // Every facet of x through v must fit, as far as it is mapped, inside some
    // facet of y.
    for (FacetIndex w : x.facets_containing(v)) {
      std::vector<VertexIndex> mapped;
      for (VertexIndex u : x.facet(w)) {
        if (image[u] >= 0) mapped.push_back(static_cast<VertexIndex>(image[u]));
      }
      bool fits = false;
      for (FacetIndex z : y.facets_containing(mapped.front())) {
        auto fz = y.facet(z);
        fits = std::all_of(mapped.begin(), mapped.end(), [&](VertexIndex m) {
          return std::find(fz.begin(), fz.end(), m) != fz.end();
        });
        if (fits) break;
      }
      if (!fits) return false;
    }
    return true;
  }

  std::vector<std::size_t> candidates(VertexIndex v) const {
    for (std::size_t u : neighbours(x, v)) {
      if (image[u] >= 0) return neighbours(y, static_cast<VertexIndex>(image[u]));
    }
    std::vector<std::size_t> all(y.vertices().size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }

  bool extend(std::size_t i) {
    if (i == order.size()) return true;
    const auto v = static_cast<VertexIndex>(order[i]);
    for (std::size_t t : candidates(v)) {
      if (used[t] || y.vertex(t).color != x.vertex(v).color) continue;
      if (y.facets_containing(t).size() != x.facets_containing(v).size()) continue;
      image[v] = static_cast<int>(t);
      used[t] = 1;
      if (consistent(v) && extend(i + 1)) return true;
      image[v] = -1;
      used[t] = 0;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const ChromaticComplex& x, const ChromaticComplex& y) {
  if (x.agents() != y.agents() || x.vertices().size() != y.vertices().size() ||
      x.facet_count() != y.facet_count()) {
    return false;
  }
  IsoSearch search{x, y, {}, std::vector<int>(x.vertices().size(), -1),
                   std::vector<char>(y.vertices().size(), 0)};
  search.order = bfs_order(x.vertices().size(), [&](std::size_t v) {
    return search.neighbours(x, static_cast<VertexIndex>(v));
  });
  if (!search.extend(0)) return false;
  // Complete maps send facets injectively into y's facets; equal counts make it onto.
  std::set<std::vector<VertexIndex>> images;
  for (const auto& facet : x.facets()) {
    std::vector<VertexIndex> mapped;
    for (VertexIndex v : facet) mapped.push_back(static_cast<VertexIndex>(search.image[v]));
    std::sort(mapped.begin(), mapped.end());
    images.insert(mapped);
  }
  std::set<std::vector<VertexIndex>> targets;
  for (const auto& facet : y.facets()) {
    std::vector<VertexIndex> sorted(facet.begin(), facet.end());
    std::sort(sorted.begin(), sorted.end());
    targets.insert(sorted);
  }
  return images == targets;
}

namespace {

struct FrameIsoSearch {
  const EpistemicFrame& x;
  const EpistemicFrame& y;
  std::vector<std::vector<std::size_t>> x_sizes;
  std::vector<std::vector<std::size_t>> y_sizes;
  std::vector<std::size_t> order;
  std::vector<int> image;
  std::vector<char> used;

  static std::vector<std::vector<std::size_t>> class_sizes(const EpistemicFrame& f) {
    std::vector<std::vector<std::size_t>> out(f.worlds().size());
    for (std::size_t w = 0; w < f.worlds().size(); ++w) {
      for (AgentIndex a = 0; a < f.agents().size(); ++a) {
        std::size_t size = 0;
        for (std::size_t u = 0; u < f.worlds().size(); ++u) size += f.related(a, w, u);
        out[w].push_back(size);
      }
    }
    return out;
  }

  static std::vector<std::size_t> neighbours(const EpistemicFrame& f, std::size_t w) {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < f.worlds().size(); ++u) {
      for (AgentIndex a = 0; a < f.agents().size(); ++a) {
        if (u != w && f.related(a, w, u)) {
          out.push_back(u);
          break;
        }
      }
    }
    return out;
  }

  std::vector<std::size_t> candidates(std::size_t w) const {
    for (std::size_t u : neighbours(x, w)) {
      if (image[u] >= 0) return neighbours(y, static_cast<std::size_t>(image[u]));
    }
    std::vector<std::size_t> all(y.worlds().size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }

  bool extend(std::size_t i) {
    if (i == order.size()) return true;
    const std::size_t w = order[i];
    for (std::size_t t : candidates(w)) {
      if (used[t] || x_sizes[w] != y_sizes[t]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const std::size_t u = order[j];
        for (AgentIndex a = 0; a < x.agents().size() && ok; ++a) {
          ok = x.related(a, w, u) == y.related(a, t, static_cast<std::size_t>(image[u]));
        }
      }
      if (!ok) continue;
      image[w] = static_cast<int>(t);
      used[t] = 1;
      if (extend(i + 1)) return true;
      image[w] = -1;
      used[t] = 0;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const EpistemicFrame& x, const EpistemicFrame& y) {
  if (x.agents() != y.agents() || x.worlds().size() != y.worlds().size()) return false;
  FrameIsoSearch search{x,
                        y,
                        FrameIsoSearch::class_sizes(x),
                        FrameIsoSearch::class_sizes(y),
                        bfs_order(x.worlds().size(), [&](std::size_t w) { return FrameIsoSearch::neighbours(x, w); }),
                        std::vector<int>(x.worlds().size(), -1),
                        std::vector<char>(y.worlds().size(), 0)};
  return search.extend(0);
}

std::vector<std::vector<int>> output_tuples(std::size_t n, bool majority0) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    std::vector<int> t;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back((bits >> i) & 1U);
      zeros += t.back() == 0;
    }
    const bool agreed = zeros == 0 || zeros == n;
    if (agreed || (majority0 && 2 * zeros > n)) out.push_back(t);
  }
  return out;
}

std::size_t product_update_facets(std::size_t n, bool majority0) {
  const auto outputs = output_tuples(n, majority0);
  std::size_t total = 0;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    std::set<int> in;
    for (std::size_t i = 0; i < n; ++i) in.insert((bits >> i) & 1U);
    for (const auto& o : outputs) {
      total += std::all_of(o.begin(), o.end(), [&](int v) { return in.contains(v); });
    }
  }
  return total;
}

std::vector<std::string> random_group(std::mt19937& rng, const std::vector<std::string>& agents) {
  std::vector<std::string> group;
  while (group.empty()) {
    for (const auto& a : agents) {
      if (std::bernoulli_distribution(0.5)(rng)) group.push_back(a);
    }
  }
  return group;
}

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& agents, int depth) {
  std::uniform_int_distribution<std::size_t> pick_agent(0, agents.size() - 1);
  if (depth == 0) {
    return Formula::atom(AtomKey::Input, agents[pick_agent(rng)], std::uniform_int_distribution<int>(0, 1)(rng));
  }
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0:
      return Formula::negation(random_formula(rng, agents, depth - 1));
    case 1:
      return Formula::conjunction({random_formula(rng, agents, depth - 1), random_formula(rng, agents, depth - 1)});
    case 2:
      return Formula::disjunction({random_formula(rng, agents, depth - 1), random_formula(rng, agents, depth - 1)});
    case 3:
      return Formula::knows(agents[pick_agent(rng)], random_formula(rng, agents, depth - 1));
    case 4:
      return Formula::distributed(random_group(rng, agents), random_formula(rng, agents, depth - 1));
    case 5:
      return Formula::common(random_group(rng, agents), random_formula(rng, agents, depth - 1));
    case 6: {
      chromatic::GroupFamily family{random_group(rng, agents), random_group(rng, agents)};
      return Formula::common_distributed(family, random_formula(rng, agents, depth - 1));
    }
    default:
      return random_formula(rng, agents, 0);
  }
}

}  // namespace oracle
