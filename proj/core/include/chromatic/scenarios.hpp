#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chromatic/communication.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/formula.hpp"
#include "chromatic/task.hpp"

namespace chromatic {

/// a, b, c, ...
std::vector<std::string> default_agents(std::size_t n);

/// (and (= input a v) (= input b v) ...)
Formula all_inputs_equal_to(const std::vector<std::string>& agents, int value);

/// CD over all pairs of agents of (not all inputs = value). With value 1 this
/// is the formula whose knowledge drives the courteous rule.
Formula not_all_common_distributed(const std::vector<std::string>& agents, int value);

/// CD(not all 0), or at least two agents know CD(not all 1).
Formula tas_obstruction_formula(const std::vector<std::string>& agents);

/// Bundled protocol complexes over the binary input complex:
///   ub1, is1, tas1   one round of the named model
///   tas1+partial     tas1 followed by the extra round among qualifying losers
///   is2, ub2, tas2   two full rounds
/// Throws UnknownKind.
ChromaticComplex build_scenario(std::string_view name, const std::vector<std::string>& agents);

std::vector<std::string> scenario_names();

/// Muddy children: agent i sees every other child's forehead. The three-child
/// puzzle uses agents pink, blue, yellow; larger puzzles use c1..cn.
std::vector<std::string> muddy_children_agents(std::size_t children);
ChromaticComplex muddy_children_complex(std::size_t children);
/// World label such as "100", one digit per child in agent order.
std::string muddy_world_name(const ChromaticComplex& c, FacetIndex w);

Formula at_least_one_muddy(const std::vector<std::string>& children);
/// K_x (= input x 1)
Formula knows_own_mud(const std::string& child);
/// No child knows that they are muddy.
Formula nobody_knows_own_mud(const std::vector<std::string>& children);

}  // namespace chromatic
