#include "chromatic/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "chromatic/error.hpp"

namespace chromatic {

Valuation Valuation::local_state() {
  return Valuation([](const ChromaticComplex& c, FacetIndex w, const Formula& atom) {
    AgentIndex a = c.require_agent(atom.agent());
    auto facet = c.facet(w);
    const Vertex& own = c.vertex(facet[a]);
    if (atom.atom_key() == AtomKey::Decision) {
      return own.decision.has_value() && *own.decision == atom.value();
    }
    if (auto v = own.state.input_of(atom.agent())) return *v == atom.value();
    for (VertexIndex other : facet) {
      if (auto v = c.vertex(other).state.input_of(atom.agent())) return *v == atom.value();
    }
    return false;
  });
}

Evaluator::Evaluator(const ChromaticComplex& complex, Valuation valuation)
    : complex_(complex), valuation_(std::move(valuation)) {}

const std::vector<char>& Evaluator::truth(const Formula& f) {
  std::string key = f.to_string();
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<char> values = compute(f);
  return memo_.emplace(std::move(key), std::move(values)).first->second;
}

bool Evaluator::holds(FacetIndex w, const Formula& f) {
  complex_.facet(w);
  return truth(f)[w] != 0;
}

const std::vector<std::size_t>& Evaluator::components(std::vector<AgentMask> alpha) {
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  auto it = component_cache_.find(alpha);
  if (it != component_cache_.end()) return it->second;
  auto ids = world_components(complex_, alpha);
  return component_cache_.emplace(std::move(alpha), std::move(ids)).first->second;
}

namespace {

/// phi holds at every world of each block (block id per facet).
std::vector<char> all_in_block(const std::vector<std::size_t>& block, const std::vector<char>& inner) {
  std::size_t blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  std::vector<char> ok(blocks, 1);
  for (std::size_t w = 0; w < block.size(); ++w) {
    if (!inner[w]) ok[block[w]] = 0;
  }
  std::vector<char> out(block.size());
  for (std::size_t w = 0; w < block.size(); ++w) out[w] = ok[block[w]];
  return out;
}

}  // namespace

std::vector<char> Evaluator::compute(const Formula& f) {
  const std::size_t nf = complex_.facet_count();
  switch (f.kind()) {
    case FormulaKind::True:
      return std::vector<char>(nf, 1);
    case FormulaKind::False:
      return std::vector<char>(nf, 0);
    case FormulaKind::Atom: {
      complex_.require_agent(f.agent());
      std::vector<char> out(nf);
      for (FacetIndex w = 0; w < nf; ++w) out[w] = valuation_(complex_, w, f) ? 1 : 0;
      return out;
    }
    case FormulaKind::Not: {
      std::vector<char> out = truth(f.child());
      for (auto& b : out) b = !b;
      return out;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool conj = f.kind() == FormulaKind::And;
      std::vector<char> out(nf, conj ? 1 : 0);
      for (const auto& part : f.children()) {
        const auto& values = truth(part);
        for (FacetIndex w = 0; w < nf; ++w) out[w] = conj ? (out[w] && values[w]) : (out[w] || values[w]);
      }
      return out;
    }
    case FormulaKind::Implies: {
      std::vector<char> out = truth(f.children()[0]);
      const auto& conclusion = truth(f.children()[1]);
      for (FacetIndex w = 0; w < nf; ++w) out[w] = !out[w] || conclusion[w];
      return out;
    }
    case FormulaKind::Knows: {
      AgentIndex a = complex_.require_agent(f.agent());
      const auto& inner = truth(f.child());
      std::vector<char> known(complex_.vertices().size(), 1);
      for (FacetIndex w = 0; w < nf; ++w) {
        if (!inner[w]) known[complex_.vertex_of(w, a)] = 0;
      }
      std::vector<char> out(nf);
      for (FacetIndex w = 0; w < nf; ++w) out[w] = known[complex_.vertex_of(w, a)];
      return out;
    }
    case FormulaKind::Distributed: {
      AgentMask group = complex_.group_mask(f.group());
      const auto& inner = truth(f.child());
      // Facets sharing the group's face form one block.
      std::unordered_map<std::string, std::size_t> face_ids;
      std::vector<std::size_t> block(nf);
      for (FacetIndex w = 0; w < nf; ++w) {
        std::string key;
        auto facet = complex_.facet(w);
        for (AgentIndex a = 0; a < facet.size(); ++a) {
          if (group & (AgentMask{1} << a)) key += std::to_string(facet[a]) + ',';
        }
        block[w] = face_ids.emplace(std::move(key), face_ids.size()).first->second;
      }
      return all_in_block(block, inner);
    }
    case FormulaKind::Common: {
      std::vector<AgentMask> alpha;
      for (const auto& a : f.group()) alpha.push_back(AgentMask{1} << complex_.require_agent(a));
      const auto& inner = truth(f.child());
      return all_in_block(components(std::move(alpha)), inner);
    }
    case FormulaKind::CommonDistributed: {
      std::vector<AgentMask> alpha;
      for (const auto& g : f.family()) alpha.push_back(complex_.group_mask(g));
      const auto& inner = truth(f.child());
      return all_in_block(components(std::move(alpha)), inner);
    }
  }
  throw Error(ErrorCode::MalformedInput, "unhandled formula kind");
}

bool eval_formula(const ChromaticComplex& c, const Valuation& v, FacetIndex w, const Formula& f) {
  Evaluator evaluator(c, v);
  return evaluator.holds(w, f);
}

ChromaticComplex public_announce(const ChromaticComplex& c, const Valuation& v, const Formula& f) {
  Evaluator evaluator(c, v);
  const auto& values = evaluator.truth(f);
  std::vector<FacetIndex> keep;
  for (FacetIndex w = 0; w < c.facet_count(); ++w) {
    if (values[w]) keep.push_back(w);
  }
  if (keep.empty()) throw Error(ErrorCode::EmptyModel, "no world satisfies " + f.to_string());
  return restrict_to_facets(c, keep);
}

}  // namespace chromatic
