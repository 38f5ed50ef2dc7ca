#pragma once

#include <functional>
#include <span>

#include "waso/graph.hpp"

namespace waso::oracle {

struct BruteForceOptions {
  WeightMode mode{WeightMode::Unweighted};
  bool override_guard{false};
};

/// Largest n and C(n,k) the exhaustive routines accept without an override.
inline constexpr std::size_t kMaxNodes = 25;
inline constexpr double kMaxCombinations = 1e7;

/// C(n,k) as a double (saturates gracefully for large inputs).
double binomial(std::size_t n, std::size_t k);

/// Visits every connected k-subset exactly once. Each subset is anchored at
/// its minimum id and grown with ESU-style exclusive extension sets, so no
/// deduplication is needed. Members are passed sorted.
void for_each_connected_subset(
    const SocialGraph& graph, std::size_t k,
    const std::function<void(std::span<const NodeId>)>& visit);

/// Best connected k-group; ties go to the lexicographically smallest set.
/// Throws ScaleGuard above the desk-scale limits unless overridden, and
/// Infeasible when no connected k-subset exists.
Solution brute_force(const SocialGraph& graph, std::size_t k,
                     const BruteForceOptions& options = {});

/// Best k-group without the connectivity constraint.
Solution brute_force_dis(const SocialGraph& graph, std::size_t k,
                         const BruteForceOptions& options = {});

}  // namespace waso::oracle
