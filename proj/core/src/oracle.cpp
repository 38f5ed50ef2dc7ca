#include "waso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace waso::oracle {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

namespace {

void guard(const SocialGraph& graph, std::size_t k,
           const BruteForceOptions& options) {
  if (k < 1 || k > graph.size()) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [1, n]");
  }
  if (options.override_guard) return;
  if (graph.size() > kMaxNodes || binomial(graph.size(), k) > kMaxCombinations) {
    throw Error(ErrorCode::ScaleGuard,
                "exhaustive search refused for n=" + std::to_string(graph.size()) +
                    ", k=" + std::to_string(k) + " (limits: n <= 25, C(n,k) <= 1e7)");
  }
}

class Esu {
 public:
  Esu(const SocialGraph& graph, std::size_t k,
      const std::function<void(std::span<const NodeId>)>& visit)
      : g_(graph), k_(k), visit_(visit), marks_(graph.size(), 0) {}

  void run() {
    for (NodeId v = 0; v < g_.size(); ++v) {
      sub_.assign(1, v);
      mark_neighbourhood(v, +1);
      std::vector<NodeId> ext;
      for (const Neighbor& nb : g_.neighbors(v)) {
        if (nb.id > v) ext.push_back(nb.id);
      }
      extend(ext, v);
      mark_neighbourhood(v, -1);
    }
  }

 private:
  // marks_[u] > 0 when u is in sub_ or adjacent to a node of sub_
  void mark_neighbourhood(NodeId v, int delta) {
    marks_[v] += delta;
    for (const Neighbor& nb : g_.neighbors(v)) marks_[nb.id] += delta;
  }

  void extend(std::vector<NodeId> ext, NodeId anchor) {
    if (sub_.size() == k_) {
      sorted_ = sub_;
      std::sort(sorted_.begin(), sorted_.end());
      visit_(sorted_);
      return;
    }
    while (!ext.empty()) {
      const NodeId w = ext.back();
      ext.pop_back();
      std::vector<NodeId> next = ext;
      for (const Neighbor& nb : g_.neighbors(w)) {
        if (nb.id > anchor && marks_[nb.id] == 0) next.push_back(nb.id);
      }
      sub_.push_back(w);
      mark_neighbourhood(w, +1);
      extend(std::move(next), anchor);
      mark_neighbourhood(w, -1);
      sub_.pop_back();
    }
  }

  const SocialGraph& g_;
  std::size_t k_;
  const std::function<void(std::span<const NodeId>)>& visit_;
  std::vector<int> marks_;
  std::vector<NodeId> sub_;
  std::vector<NodeId> sorted_;
};

struct Best {
  std::optional<std::vector<NodeId>> members;
  double value{0.0};

  void offer(std::span<const NodeId> set, double w) {
    if (!members || better_group(w, set, value, *members)) {
      members.emplace(set.begin(), set.end());
      value = w;
    }
  }
};

}  // namespace

void for_each_connected_subset(
    const SocialGraph& graph, std::size_t k,
    const std::function<void(std::span<const NodeId>)>& visit) {
  if (k == 0) return;
  Esu(graph, k, visit).run();
}

Solution brute_force(const SocialGraph& graph, std::size_t k,
                     const BruteForceOptions& options) {
  guard(graph, k, options);
  Best best;
  for_each_connected_subset(graph, k, [&](std::span<const NodeId> set) {
    best.offer(set, willingness(graph, set, options.mode));
  });
  if (!best.members) {
    throw Error(ErrorCode::Infeasible, "no connected group of size " +
                                           std::to_string(k) + " exists");
  }
  return make_solution(graph, *best.members, options.mode);
}

Solution brute_force_dis(const SocialGraph& graph, std::size_t k,
                         const BruteForceOptions& options) {
  guard(graph, k, options);
  const std::size_t n = graph.size();
  Best best;
  std::vector<NodeId> set(k);
  for (std::size_t i = 0; i < k; ++i) set[i] = static_cast<NodeId>(i);
  for (;;) {
    best.offer(set, willingness(graph, set, options.mode));
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && set[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++set[i - 1];
    for (std::size_t j = i; j < k; ++j) set[j] = set[j - 1] + 1;
  }
  return make_solution(graph, *best.members, options.mode);
}

}  // namespace waso::oracle
