#include "waso/sampling.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace waso {

std::vector<std::uint8_t> SampleVector::bits(std::size_t n) const {
  std::vector<std::uint8_t> out(n, 0);
  for (NodeId v : members) out.at(v) = 1;
  return out;
}

bool SampleVector::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

Expander::Expander(const SocialGraph& graph, WeightMode mode)
    : graph_(&graph),
      mode_(mode),
      in_partial_(graph.size(), 0),
      frontier_pos_(graph.size(), 0),
      gain_(graph.size(), 0.0) {}

void Expander::reset() {
  for (NodeId v : touched_) {
    in_partial_[v] = 0;
    frontier_pos_[v] = 0;
    gain_[v] = 0.0;
  }
  touched_.clear();
  frontier_.clear();
  partial_.clear();
  value_ = 0.0;
}

void Expander::add(NodeId v) {
  // remove from frontier (swap-remove)
  if (const std::uint32_t pos = frontier_pos_[v]; pos != 0) {
    const NodeId last = frontier_.back();
    frontier_[pos - 1] = last;
    frontier_pos_[last] = pos;
    frontier_.pop_back();
    frontier_pos_[v] = 0;
  } else {
    touched_.push_back(v);
    // gain of a node not yet on the frontier: only its own interest term
    const NodeRecord& rec = graph_->node(v);
    gain_[v] = mode_ == WeightMode::Unweighted ? rec.eta : rec.lambda * rec.eta;
    for (const Neighbor& nb : graph_->neighbors(v)) {
      if (!in_partial_[nb.id]) continue;
      if (mode_ == WeightMode::Unweighted) {
        gain_[v] += nb.out + nb.in;
      } else {
        gain_[v] += (1.0 - rec.lambda) * nb.out +
                    (1.0 - graph_->node(nb.id).lambda) * nb.in;
      }
    }
  }
  value_ += gain_[v];
  in_partial_[v] = 1;
  partial_.push_back(v);

  const double own_keep =
      mode_ == WeightMode::Unweighted ? 1.0 : 1.0 - graph_->node(v).lambda;
  for (const Neighbor& nb : graph_->neighbors(v)) {
    const NodeId u = nb.id;
    if (in_partial_[u]) continue;
    if (frontier_pos_[u] == 0) {
      touched_.push_back(u);
      frontier_.push_back(u);
      frontier_pos_[u] = static_cast<std::uint32_t>(frontier_.size());
      const NodeRecord& rec = graph_->node(u);
      gain_[u] =
          mode_ == WeightMode::Unweighted ? rec.eta : rec.lambda * rec.eta;
    }
    // nb.out = tau(v->u), nb.in = tau(u->v)
    const double u_keep =
        mode_ == WeightMode::Unweighted ? 1.0 : 1.0 - graph_->node(u).lambda;
    gain_[u] += u_keep * nb.in + own_keep * nb.out;
  }
}

std::size_t Expander::pick_uniform(RngStream& rng) const {
  return static_cast<std::size_t>(rng.below(frontier_.size()));
}

std::size_t Expander::pick_weighted(RngStream& rng,
                                    std::span<const double> p) const {
  double mass = 0.0;
  for (NodeId v : frontier_) mass += p[v];
  if (!(mass > 0.0)) return pick_uniform(rng);
  const double target = rng.uniform() * mass;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < frontier_.size(); ++i) {
    const double w = p[frontier_[i]];
    if (w <= 0.0) continue;
    acc += w;
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

std::size_t Expander::pick_greedy(RngStream& rng) const {
  double lowest = std::numeric_limits<double>::infinity();
  for (NodeId v : frontier_) lowest = std::min(lowest, value_ + gain_[v]);
  const double shift = lowest > 0.0 ? 0.0 : 1.0 - lowest;
  double mass = 0.0;
  for (NodeId v : frontier_) mass += value_ + gain_[v] + shift;
  const double target = rng.uniform() * mass;
  double acc = 0.0;
  for (std::size_t i = 0; i < frontier_.size(); ++i) {
    acc += value_ + gain_[frontier_[i]] + shift;
    if (target < acc) return i;
  }
  return frontier_.size() - 1;
}

SampleVector Expander::grow(std::span<const NodeId> seed, std::size_t k,
                            ExpansionRule rule, RngStream& rng,
                            std::span<const double> p) {
  if (rule == ExpansionRule::Weighted && p.size() != graph_->size()) {
    throw Error(ErrorCode::LengthMismatch,
                "selection probability vector has the wrong length");
  }
  reset();
  for (NodeId v : seed) {
    if (v >= graph_->size()) {
      throw Error(ErrorCode::InvalidMember, "seed node is not in the graph");
    }
    if (!in_partial_[v]) add(v);
  }
  while (partial_.size() < k) {
    if (frontier_.empty()) {
      reset();
      throw Error(ErrorCode::InfeasibleStart,
                  "partial solution cannot be grown to " + std::to_string(k) +
                      " connected nodes");
    }
    std::size_t idx = 0;
    switch (rule) {
      case ExpansionRule::Uniform: idx = pick_uniform(rng); break;
      case ExpansionRule::Weighted: idx = pick_weighted(rng, p); break;
      case ExpansionRule::Greedy: idx = pick_greedy(rng); break;
    }
    add(frontier_[idx]);
  }
  SampleVector out;
  out.members = partial_;
  std::sort(out.members.begin(), out.members.end());
  out.willingness = value_;
  return out;
}

void require_feasible_start(const SocialGraph& graph, NodeId start,
                            std::size_t k) {
  if (start >= graph.size()) {
    throw Error(ErrorCode::InvalidMember, "start node is not in the graph");
  }
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (graph.component_size(start) < k) {
    throw Error(ErrorCode::InfeasibleStart,
                "component of start node " + graph.label(start) + " has " +
                    std::to_string(graph.component_size(start)) +
                    " nodes, fewer than k=" + std::to_string(k));
  }
}

SampleVector expand_uniform(const SocialGraph& graph, NodeId start,
                            std::size_t k, RngStream& rng, WeightMode mode) {
  require_feasible_start(graph, start, k);
  Expander ex(graph, mode);
  const NodeId seed[] = {start};
  return ex.grow(seed, k, ExpansionRule::Uniform, rng);
}

SampleVector expand_weighted(const SocialGraph& graph, NodeId start,
                             std::size_t k, std::span<const double> p,
                             RngStream& rng, WeightMode mode) {
  require_feasible_start(graph, start, k);
  Expander ex(graph, mode);
  const NodeId seed[] = {start};
  return ex.grow(seed, k, ExpansionRule::Weighted, rng, p);
}

SampleVector expand_greedy(const SocialGraph& graph, NodeId start,
                           std::size_t k, RngStream& rng, WeightMode mode) {
  require_feasible_start(graph, start, k);
  Expander ex(graph, mode);
  const NodeId seed[] = {start};
  return ex.grow(seed, k, ExpansionRule::Greedy, rng);
}

void BatchStats::add(const SampleVector& s) {
  if (count == 0) {
    worst = best = s.willingness;
    best_sample = s;
  } else {
    worst = std::min(worst, s.willingness);
    if (better_group(s.willingness, s.members, best,
                     best_sample->members)) {
      best = s.willingness;
      best_sample = s;
    }
  }
  ++count;
}

void BatchStats::merge(const BatchStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  worst = std::min(worst, other.worst);
  if (better_group(other.best, other.best_sample->members, best,
                   best_sample->members)) {
    best = other.best;
    best_sample = other.best_sample;
  }
  count += other.count;
}

SampleBatch sample_batch(const SocialGraph& graph, NodeId start,
                         std::size_t k, std::size_t count,
                         std::span<const double> p, std::uint64_t seed,
                         std::uint64_t stage, std::uint64_t first_index,
                         WeightMode mode) {
  if (count == 0) {
    throw Error(ErrorCode::InvalidArgument, "batch size must be >= 1");
  }
  require_feasible_start(graph, start, k);
  Expander ex(graph, mode);
  const NodeId seed_nodes[] = {start};
  const ExpansionRule rule =
      p.empty() ? ExpansionRule::Uniform : ExpansionRule::Weighted;
  SampleBatch batch;
  batch.samples.reserve(count);
  for (std::size_t q = 0; q < count; ++q) {
    RngStream rng(seed, start, stage, first_index + q);
    batch.samples.push_back(ex.grow(seed_nodes, k, rule, rng, p));
    batch.stats.add(batch.samples.back());
  }
  return batch;
}

}  // namespace waso
