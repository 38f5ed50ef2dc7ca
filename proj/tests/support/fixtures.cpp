#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waso/rng.hpp"
#include "waso/synth.hpp"

namespace waso::test {

SocialGraph example_graph() {
  static const double eta[10] = {1.0, 0.4, 0.8, 1.0, 1.0, 0.9, 1.0, 0.45, 0.7, 0.9};
  struct E {
    int a, b;
    double t;
  };
  static const E edges[] = {
      {1, 2, 0.8},  {1, 3, 0.6}, {1, 5, 0.9}, {2, 3, 0.5},  {3, 4, 0.9},  {3, 5, 1.0},
      {3, 6, 0.4},  {4, 7, 0.9}, {5, 6, 0.4}, {5, 7, 0.4},  {6, 7, 1.0},  {6, 8, 0.05},
      {6, 10, 0.6}, {7, 10, 0.8}, {8, 10, 1.0}, {9, 10, 0.9},
  };
  GraphBuilder b;
  for (int i = 0; i < 10; ++i) b.add_node(eta[i], 0.5, std::to_string(i + 1));
  for (const E& e : edges) b.add_undirected(v(e.a), v(e.b), e.t);
  return b.build();
}

std::vector<NodeId> group(std::initializer_list<int> labels) {
  std::vector<NodeId> out;
  for (int l : labels) out.push_back(v(l));
  std::sort(out.begin(), out.end());
  return out;
}

SocialGraph greedy_trap_graph() {
  GraphBuilder b;
  b.add_node(9, 0.5, "1");
  b.add_node(6, 0.5, "2");
  b.add_node(3, 0.5, "3");
  b.add_node(5, 0.5, "4");
  b.add_undirected(0, 1, 2);
  b.add_undirected(1, 2, 7);
  b.add_undirected(1, 3, 4);
  b.add_undirected(2, 3, 5);
  return b.build();
}

SocialGraph path_graph(std::size_t n, double eta, double t) {
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(eta, 0.5, std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    b.add_undirected(static_cast<NodeId>(i), static_cast<NodeId>(i + 1), t);
  }
  return b.build();
}

SocialGraph star_graph(std::size_t leaves, double center_eta, double leaf_eta,
                       double t) {
  GraphBuilder b;
  b.add_node(center_eta, 0.5, "c");
  for (std::size_t i = 0; i < leaves; ++i) {
    const NodeId leaf = b.add_node(leaf_eta, 0.5, "l" + std::to_string(i));
    b.add_undirected(0, leaf, t);
  }
  return b.build();
}

SocialGraph unit_graph(std::size_t n,
                       std::span<const std::pair<NodeId, NodeId>> edges) {
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(0.0, 0.5, std::to_string(i));
  for (auto [a, c] : edges) b.add_symmetric(a, c, 1.0);
  return b.build();
}

SocialGraph random_instance(std::size_t n, std::uint64_t seed, double extra_degree,
                            bool quantize) {
  RngStream rng(seed, 0x7e57, 0, 0);
  synth::EdgeList edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(rng.below(i)), static_cast<NodeId>(i));
  }
  if (extra_degree > 0.0) {
    for (auto e : synth::erdos_renyi(n, extra_degree, seed ^ 0xabcdef)) edges.push_back(e);
  }
  for (auto& [a, c] : edges) {
    if (a > c) std::swap(a, c);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  SocialGraph g = synth::synthesize_scores(n, edges, 2.5, seed);
  if (!quantize) return g;
  auto q = [](double x) { return std::round(x * 1024.0) / 1024.0; };
  GraphBuilder b;
  for (NodeId i = 0; i < g.size(); ++i) {
    b.add_node(q(g.node(i).eta), g.node(i).lambda, g.label(i));
  }
  for (NodeId i = 0; i < g.size(); ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      if (nb.has_out) b.set_tightness(i, nb.id, q(nb.out));
    }
  }
  return b.build();
}

SocialGraph scaled(const SocialGraph& g, double c) {
  GraphBuilder b;
  for (NodeId i = 0; i < g.size(); ++i) {
    b.add_node(g.node(i).eta * c, g.node(i).lambda, g.label(i));
  }
  for (NodeId i = 0; i < g.size(); ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      if (nb.has_out) b.set_tightness(i, nb.id, nb.out * c);
    }
  }
  return b.build();
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const NodeId>)>& fn) {
  if (k > n) return;
  std::vector<NodeId> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<NodeId>(i);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void ScriptedSource::set(NodeId start, std::size_t stage,
                         std::vector<std::vector<NodeId>> samples) {
  for (auto& s : samples) std::sort(s.begin(), s.end());
  script_[{start, stage}] = std::move(samples);
}

SampleVector ScriptedSource::draw(Expander& expander,
                                  const SampleRequest& request) const {
  auto it = script_.find({request.start, request.stage});
  if (it == script_.end() || it->second.empty()) {
    return SampleSource::draw(expander, request);
  }
  SampleVector s;
  s.members = it->second[request.index % it->second.size()];
  s.willingness = willingness(expander.graph(), s.members);
  return s;
}

std::vector<std::vector<NodeId>> start3_stage1() {
  return {group({1, 3, 4, 5, 6}), group({1, 2, 3, 4, 5}), group({2, 3, 5, 6, 8}),
          group({2, 3, 4, 5, 7}), group({3, 5, 6, 7, 10})};
}

std::vector<std::vector<NodeId>> start10_stage1() {
  return {group({4, 5, 6, 7, 10}), group({5, 7, 8, 9, 10}), group({6, 7, 8, 9, 10}),
          group({1, 2, 3, 6, 10}), group({1, 3, 4, 6, 10})};
}

ScriptedSource example_trace(bool find_optimum) {
  ScriptedSource src;
  src.set(v(3), 1, start3_stage1());
  src.set(v(10), 1, start10_stage1());
  if (find_optimum) {
    src.set(v(3), 2, {group({2, 3, 5, 6, 8}), group({3, 4, 5, 6, 7}), group({1, 3, 4, 5, 6})});
  } else {
    src.set(v(3), 2, {group({2, 3, 5, 6, 8}), group({1, 3, 4, 5, 6})});
  }
  src.set(v(10), 2, {group({5, 7, 8, 9, 10}), group({1, 2, 3, 6, 10})});
  return src;
}

double sign_test_p(std::size_t wins, std::size_t trials) {
  // sum_{i >= wins} C(trials, i) / 2^trials, in log space
  double p = 0.0;
  for (std::size_t i = wins; i <= trials; ++i) {
    const double log_c = std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) -
                         std::lgamma(trials - i + 1.0);
    p += std::exp(log_c - static_cast<double>(trials) * std::log(2.0));
  }
  return std::min(p, 1.0);
}

}  // namespace waso::test
