#pragma once

// Property suites shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/formula.hpp"

namespace props {

struct Outcome {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return checked > 0 && failures.empty(); }
};

/// Complexes the suites run over: muddy children, the binary input complex
/// and the one-round protocol complexes.
std::vector<std::pair<std::string, chromatic::ChromaticComplex>> bundled_complexes();

/// Positive formulas used for the knowledge-gain check.
std::vector<chromatic::Formula> bundled_positive_formulas(const std::vector<std::string>& agents);

/// K_a = D_{a} = CD_{{a}}, C_A = CD over singletons of A, D_A = CD_{A}, over
/// `samples` random (complex, world, formula) triples drawn with `seed`.
Outcome interdefinability(std::size_t samples, std::uint32_t seed);

/// frame -> complex -> frame and complex -> frame -> complex are
/// isomorphic for every bundled frame and complex.
Outcome duality_round_trips();

/// For every map found by the search on the bundled scenarios, every bundled
/// positive formula and every world w: true at the image of w in I[O]
/// implies true at w.
Outcome knowledge_gain();

}  // namespace props
