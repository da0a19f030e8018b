#include "chromatic/scenarios.hpp"

#include <cctype>

#include "chromatic/algorithms.hpp"
#include "chromatic/error.hpp"

namespace chromatic {

std::vector<std::string> default_agents(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i + 1));
  }
  return out;
}

Formula all_inputs_equal_to(const std::vector<std::string>& agents, int value) {
  std::vector<Formula> parts;
  for (const auto& a : agents) parts.push_back(Formula::atom(AtomKey::Input, a, value));
  return Formula::conjunction(std::move(parts));
}

namespace {

GroupFamily all_pairs(const std::vector<std::string>& agents) {
  GroupFamily family;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) family.push_back({agents[i], agents[j]});
  }
  return family;
}

}  // namespace

Formula not_all_common_distributed(const std::vector<std::string>& agents, int value) {
  return Formula::common_distributed(all_pairs(agents),
                                     Formula::negation(all_inputs_equal_to(agents, value)));
}

Formula tas_obstruction_formula(const std::vector<std::string>& agents) {
  const Formula phi1 = not_all_common_distributed(agents, 1);
  std::vector<Formula> cases{not_all_common_distributed(agents, 0)};
  for (const auto& pair : all_pairs(agents)) {
    cases.push_back(Formula::conjunction({Formula::knows(pair[0], phi1), Formula::knows(pair[1], phi1)}));
  }
  return Formula::disjunction(std::move(cases));
}

ChromaticComplex build_scenario(std::string_view name, const std::vector<std::string>& agents) {
  std::string_view rest = name;
  bool partial = false;
  if (rest.ends_with("+partial")) {
    partial = true;
    rest.remove_suffix(std::string_view("+partial").size());
  }
  std::size_t digits = rest.size();
  while (digits > 0 && std::isdigit(static_cast<unsigned char>(rest[digits - 1]))) --digits;
  if (digits == rest.size() || digits == 0) {
    throw Error(ErrorCode::UnknownKind, "scenario '" + std::string(name) + "'");
  }
  const ModelKind kind = parse_model_kind(rest.substr(0, digits));
  const int rounds = std::stoi(std::string(rest.substr(digits)));
  if (partial && kind != ModelKind::TestAndSet) {
    throw Error(ErrorCode::UnknownKind, "'+partial' applies to test-and-set scenarios only");
  }
  ChromaticComplex p = iterate_rounds(binary_input_complex(agents), make_model(kind, agents), rounds);
  if (partial) p = partial_round(p, tas_loser_qualifies);
  return p;
}

std::vector<std::string> scenario_names() {
  return {"ub1", "is1", "tas1", "tas1+partial", "ub2", "is2", "tas2"};
}

std::vector<std::string> muddy_children_agents(std::size_t children) {
  if (children < 2) throw Error(ErrorCode::TooFewAgents, "muddy children needs at least 2 children");
  if (children == 3) return {"pink", "blue", "yellow"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= children; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

ChromaticComplex muddy_children_complex(std::size_t children) {
  const auto agents = muddy_children_agents(children);
  if (children > 16) throw Error(ErrorCode::TooManyAgents, "muddy children supports at most 16 children");
  const std::size_t n = agents.size();
  ComplexBuilder builder(agents);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto mud = [&](std::size_t i) { return static_cast<int>((bits >> (n - 1 - i)) & 1U); };
    std::vector<std::size_t> by_agent(n);
    for (AgentIndex i = 0; i < n; ++i) {
      std::vector<LocalState::Entry> seen;
      for (AgentIndex j = 0; j < n; ++j) {
        if (j != i) seen.push_back({agents[j], LocalState::initial(agents[j], mud(j))});
      }
      by_agent[i] = builder.intern(i, LocalState::after_round(agents[i], std::move(seen)));
    }
    builder.add_facet(std::move(by_agent));
  }
  return std::move(builder).finish();
}

std::string muddy_world_name(const ChromaticComplex& c, FacetIndex w) {
  std::string name;
  auto facet = c.facet(w);
  for (const auto& child : c.agents()) {
    char digit = '?';
    for (VertexIndex v : facet) {
      if (auto value = c.vertex(v).state.input_of(child)) {
        digit = static_cast<char>('0' + *value);
        break;
      }
    }
    name += digit;
  }
  return name;
}

Formula at_least_one_muddy(const std::vector<std::string>& children) {
  std::vector<Formula> parts;
  for (const auto& child : children) parts.push_back(Formula::atom(AtomKey::Input, child, 1));
  return Formula::disjunction(std::move(parts));
}

Formula knows_own_mud(const std::string& child) {
  return Formula::knows(child, Formula::atom(AtomKey::Input, child, 1));
}

Formula nobody_knows_own_mud(const std::vector<std::string>& children) {
  std::vector<Formula> parts;
  for (const auto& child : children) parts.push_back(Formula::negation(knows_own_mud(child)));
  return Formula::conjunction(std::move(parts));
}

}  // namespace chromatic
