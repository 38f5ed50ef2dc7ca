#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "waso/graph.hpp"
#include "waso/rng.hpp"

namespace waso {

/// Per-node selection probabilities for one start node, length n.
using SelectionProbabilityVector = std::vector<double>;

/// One randomly grown k-node group. Members are kept sorted; `bits` gives
/// the Bernoulli membership vector.
struct SampleVector {
  std::vector<NodeId> members;
  double willingness{0.0};

  std::vector<std::uint8_t> bits(std::size_t n) const;
  bool contains(NodeId v) const;
};

enum class ExpansionRule {
  Uniform,   // frontier node chosen uniformly
  Weighted,  // frontier restricted to p, renormalised
  Greedy,    // proportional to W({v} u S), shifted when non-positive
};

/// Grows partial solutions one frontier node at a time. Holds O(n) scratch
/// that is reset in O(touched) between samples; use one per thread.
class Expander {
 public:
  explicit Expander(const SocialGraph& graph,
                    WeightMode mode = WeightMode::Unweighted);

  SampleVector grow(std::span<const NodeId> seed, std::size_t k,
                    ExpansionRule rule, RngStream& rng,
                    std::span<const double> p = {});

  const SocialGraph& graph() const noexcept { return *graph_; }

 private:
  void add(NodeId v);
  void reset();
  std::size_t pick_uniform(RngStream& rng) const;
  std::size_t pick_weighted(RngStream& rng, std::span<const double> p) const;
  std::size_t pick_greedy(RngStream& rng) const;

  const SocialGraph* graph_;
  WeightMode mode_;
  std::vector<std::uint8_t> in_partial_;
  std::vector<std::uint32_t> frontier_pos_;  // index+1 into frontier_, 0 = absent
  std::vector<double> gain_;                 // W(S u {v}) - W(S) for frontier v
  std::vector<NodeId> frontier_;
  std::vector<NodeId> partial_;
  std::vector<NodeId> touched_;
  double value_{0.0};
};

/// Throws InfeasibleStart when start's component has fewer than k nodes.
void require_feasible_start(const SocialGraph& graph, NodeId start,
                            std::size_t k);

SampleVector expand_uniform(const SocialGraph& graph, NodeId start,
                            std::size_t k, RngStream& rng,
                            WeightMode mode = WeightMode::Unweighted);
SampleVector expand_weighted(const SocialGraph& graph, NodeId start,
                             std::size_t k, std::span<const double> p,
                             RngStream& rng,
                             WeightMode mode = WeightMode::Unweighted);
SampleVector expand_greedy(const SocialGraph& graph, NodeId start,
                           std::size_t k, RngStream& rng,
                           WeightMode mode = WeightMode::Unweighted);

/// Running worst/best over a set of samples. Merging is commutative and
/// associative; ties on the best keep the lexicographically smaller group.
struct BatchStats {
  std::size_t count{0};
  double worst{0.0};
  double best{0.0};
  std::optional<SampleVector> best_sample;

  void add(const SampleVector& s);
  void merge(const BatchStats& other);
};

struct SampleBatch {
  std::vector<SampleVector> samples;
  BatchStats stats;
};

/// Draws `count` samples from `start`. Sample q uses the stream
/// (seed, start, stage, first_index + q). Uniform expansion when `p` is empty.
SampleBatch sample_batch(const SocialGraph& graph, NodeId start,
                         std::size_t k, std::size_t count,
                         std::span<const double> p, std::uint64_t seed,
                         std::uint64_t stage = 0, std::uint64_t first_index = 0,
                         WeightMode mode = WeightMode::Unweighted);

}  // namespace waso
