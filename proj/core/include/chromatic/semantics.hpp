#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/formula.hpp"

namespace chromatic {

/// Truth of atoms at a world.
class Valuation {
 public:
  using Rule = std::function<bool(const ChromaticComplex&, FacetIndex, const Formula& atom)>;

  explicit Valuation(Rule rule) : rule_(std::move(rule)) {}

  /// Default rule. `(= input a v)` reads the input recorded in a's vertex;
  /// if a's own view does not record it (muddy children: a child cannot see
  /// its own forehead), the other vertices of the world are consulted.
  /// `(= decision a v)` reads the decision attached to a's vertex.
  static Valuation local_state();

  bool operator()(const ChromaticComplex& c, FacetIndex w, const Formula& atom) const {
    return rule_(c, w, atom);
  }

 private:
  Rule rule_;
};

/// Evaluates formulas over every world of one complex at once. Truth vectors
/// are memoized per subformula and world partitions per group family, so
/// repeated queries against the same complex are cheap.
class Evaluator {
 public:
  explicit Evaluator(const ChromaticComplex& complex, Valuation valuation = Valuation::local_state());

  /// Truth value at every facet, indexed by facet. Throws UnknownAgent.
  const std::vector<char>& truth(const Formula& f);
  /// Throws UnknownFacet.
  bool holds(FacetIndex w, const Formula& f);

  const ChromaticComplex& complex() const noexcept { return complex_; }

 private:
  std::vector<char> compute(const Formula& f);
  const std::vector<std::size_t>& components(std::vector<AgentMask> alpha);

  const ChromaticComplex& complex_;
  Valuation valuation_;
  std::map<std::string, std::vector<char>> memo_;
  std::map<std::vector<AgentMask>, std::vector<std::size_t>> component_cache_;
};

bool eval_formula(const ChromaticComplex& c, const Valuation& v, FacetIndex w, const Formula& f);

/// Keeps the worlds where `f` holds; throws EmptyModel when none survives.
ChromaticComplex public_announce(const ChromaticComplex& c, const Valuation& v, const Formula& f);

}  // namespace chromatic
