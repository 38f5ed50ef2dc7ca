#include "waso/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace waso::synth {

Topology parse_topology(std::string_view tag) {
  if (tag == "ba") return Topology::BarabasiAlbert;
  if (tag == "er") return Topology::ErdosRenyi;
  throw Error(ErrorCode::InvalidArgument,
              "unknown topology '" + std::string(tag) + "' (expected ba or er)");
}

EdgeList barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
  if (attach < 1) throw Error(ErrorCode::InvalidArgument, "attach must be >= 1");
  EdgeList edges;
  const std::size_t core = std::min(n, attach + 1);
  // endpoint list: a node appears once per incident edge
  std::vector<NodeId> ends;
  for (NodeId a = 0; a < core; ++a) {
    for (NodeId b = a + 1; b < core; ++b) {
      edges.emplace_back(a, b);
      ends.push_back(a);
      ends.push_back(b);
    }
  }
  RngStream rng(seed, 0xba, 0, 0);
  std::vector<NodeId> picked;
  for (NodeId v = static_cast<NodeId>(core); v < n; ++v) {
    picked.clear();
    while (picked.size() < attach) {
      const NodeId u = ends[rng.below(ends.size())];
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) {
        picked.push_back(u);
      }
    }
    std::sort(picked.begin(), picked.end());
    for (NodeId u : picked) {
      edges.emplace_back(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  return edges;
}

EdgeList erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed) {
  EdgeList edges;
  if (n < 2) return edges;
  const double p = std::clamp(avg_degree / static_cast<double>(n - 1), 0.0, 1.0);
  if (p <= 0.0) return edges;
  RngStream rng(seed, 0xe7, 0, 0);
  if (p >= 1.0) {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    }
    return edges;
  }
  // Batagelj-Brandes skipping over the lower triangle
  const double log_q = std::log1p(-p);
  long long v = 1, w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double u = rng.uniform();
    w += 1 + static_cast<long long>(std::floor(std::log1p(-u) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return edges;
}

double pareto(RngStream& rng, double beta) {
  return std::pow(1.0 - rng.uniform(), -1.0 / (beta - 1.0));
}

SocialGraph synthesize_scores(std::size_t n, const EdgeList& edges, double beta,
                              std::uint64_t seed, double tau_floor) {
  if (!(beta > 1.0)) throw Error(ErrorCode::InvalidArgument, "beta must exceed 1");
  if (tau_floor < 0.0) throw Error(ErrorCode::InvalidArgument, "tau floor must be >= 0");

  RngStream rng(seed, 0x5c, 0, 0);
  std::vector<double> eta(n);
  for (double& e : eta) e = pareto(rng, beta);
  if (n > 0) {
    const auto [lo, hi] = std::minmax_element(eta.begin(), eta.end());
    const double a = *lo, span = *hi - *lo;
    for (double& e : eta) e = span > 0.0 ? (e - a) / span : 0.0;
  }

  std::vector<std::vector<NodeId>> adj(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw Error(ErrorCode::InvalidMember, "edge endpoint out of range");
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  EdgeList unique_edges;
  std::vector<std::size_t> common;
  std::size_t max_common = 0;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[a]) {
      if (b <= a) continue;
      std::size_t c = 0;
      auto i = adj[a].begin(), j = adj[b].begin();
      while (i != adj[a].end() && j != adj[b].end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++c;
          ++i;
          ++j;
        }
      }
      unique_edges.emplace_back(a, b);
      common.push_back(c);
      max_common = std::max(max_common, c);
    }
  }

  GraphBuilder builder;
  for (std::size_t v = 0; v < n; ++v) builder.add_node(eta[v]);
  for (std::size_t e = 0; e < unique_edges.size(); ++e) {
    const double t = common[e] == 0
                         ? tau_floor
                         : static_cast<double>(common[e]) / static_cast<double>(max_common);
    builder.add_undirected(unique_edges[e].first, unique_edges[e].second, t);
  }
  return builder.build();
}

SocialGraph synthesize(const SynthSpec& spec) {
  if (spec.nodes < 1) throw Error(ErrorCode::InvalidArgument, "nodes must be >= 1");
  const EdgeList edges =
      spec.topology == Topology::BarabasiAlbert
          ? barabasi_albert(spec.nodes, spec.attach, spec.seed)
          : erdos_renyi(spec.nodes, spec.avg_degree, spec.seed);
  return synthesize_scores(spec.nodes, edges, spec.beta, spec.seed, spec.tau_floor);
}

}  // namespace waso::synth
