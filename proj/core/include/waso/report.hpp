#pragma once

#include <iosfwd>
#include <string>

#include "waso/graph.hpp"
#include "waso/solvers.hpp"

namespace waso {

/// Solution with per-member interest and per-edge tightness contributions,
/// plus run statistics, as a JSON document.
std::string solution_json(const SocialGraph& graph, const SolveOutcome& outcome,
                          WeightMode mode, bool pretty = true);

/// One row per member: label,eta,contribution; then a summary row.
void write_solution_csv(std::ostream& out, const SocialGraph& graph,
                        const Solution& solution, WeightMode mode);

}  // namespace waso
