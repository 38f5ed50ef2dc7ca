#pragma once

// Shared JSON plumbing for the experiment runner and the service. Not installed.

#include <charconv>
#include <string>

#include "json.hpp"
#include "waso/config.hpp"
#include "waso/error.hpp"
#include "waso/graph.hpp"

namespace waso::detail {

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Overlays the keys of `j` on `base`. Unknown keys are a Parse error.
/// Keys: k, budget, starts, stages, rho, smooth, alpha, pb, seed, algo,
/// distribution, backtrack, weighted_lambda, workers, brute_override.
SolverConfig config_from_json(const nlohmann::json& j, SolverConfig base = {});
nlohmann::json config_to_json(const SolverConfig& config);

nlohmann::json solution_to_json(const SocialGraph& graph, const Solution& s,
                                WeightMode mode);

}  // namespace waso::detail
