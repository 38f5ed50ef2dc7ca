#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "waso/graph.hpp"
#include "waso/rng.hpp"

namespace waso::synth {

enum class Topology { BarabasiAlbert, ErdosRenyi };
Topology parse_topology(std::string_view tag);  // "ba" or "er"

struct SynthSpec {
  std::size_t nodes{1000};
  Topology topology{Topology::BarabasiAlbert};
  double beta{2.5};
  std::uint64_t seed{1};
  std::size_t attach{3};     // BA: edges added per arriving node
  double avg_degree{6.0};    // ER: expected degree
  double tau_floor{0.01};    // tightness of edges with no common neighbour
};

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

/// Preferential attachment: starts from a clique on `attach`+1 nodes, then
/// each new node links to `attach` distinct nodes drawn by degree.
EdgeList barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed);

/// G(n, p) with p = avg_degree/(n-1), generated by geometric skipping.
EdgeList erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed);

/// Pareto draw with x_min = 1: (1-u)^(-1/(beta-1)).
double pareto(RngStream& rng, double beta);

/// Interest scores from a Pareto(beta) draw, min-max normalised to [0,1].
/// Tightness of edge (i,j) is its common-neighbour count divided by the
/// largest such count, or `tau_floor` when it has none; loaded undirected.
SocialGraph synthesize_scores(std::size_t n, const EdgeList& edges, double beta,
                              std::uint64_t seed, double tau_floor = 0.01);

SocialGraph synthesize(const SynthSpec& spec);

}  // namespace waso::synth
