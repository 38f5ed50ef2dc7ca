#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "waso/graph.hpp"
#include "waso/solvers.hpp"

namespace waso::test {

/// Ten-node worked example. Labels "1".."10" sit at ids 0..9.
/// Undirected edges are loaded as t/2 each way.
SocialGraph example_graph();

inline NodeId v(int label) { return static_cast<NodeId>(label - 1); }
std::vector<NodeId> group(std::initializer_list<int> labels);

/// Four nodes where greedy from the top-eta node is trapped:
/// greedy {1,2,3} = 27, optimum {2,3,4} = 30.
SocialGraph greedy_trap_graph();

SocialGraph path_graph(std::size_t n, double eta = 1.0, double t = 1.0);
SocialGraph star_graph(std::size_t leaves, double center_eta, double leaf_eta,
                       double t);
/// eta = 0, tau = 1 both ways on every edge.
SocialGraph unit_graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

/// Random spanning tree plus sparse extra edges, scores synthesized.
/// With `quantize` every score is rounded to a multiple of 1/1024 so sums are
/// exact in any order.
SocialGraph random_instance(std::size_t n, std::uint64_t seed,
                            double extra_degree = 1.5, bool quantize = false);

/// Same topology, every eta and tau multiplied by c.
SocialGraph scaled(const SocialGraph& g, double c);

/// Calls fn on every k-subset of {0..n-1}, members ascending.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const NodeId>)>& fn);

/// Replays fixed member sets keyed by (start, stage); sample q of a batch is
/// entry q modulo the list length.
class ScriptedSource : public SampleSource {
 public:
  void set(NodeId start, std::size_t stage, std::vector<std::vector<NodeId>> samples);
  SampleVector draw(Expander& expander, const SampleRequest& request) const override;

 private:
  std::map<std::pair<NodeId, std::size_t>, std::vector<std::vector<NodeId>>> script_;
};

/// First-stage samples of the worked example.
std::vector<std::vector<NodeId>> start3_stage1();   // X1..X5
std::vector<std::vector<NodeId>> start10_stage1();  // three elite, two not

/// Two-stage trace: stage one as above, stage two repeats lower-valued
/// groups except that start 3 finds {3,4,5,6,7} when `find_optimum`.
ScriptedSource example_trace(bool find_optimum);

/// P(X >= wins) for X ~ Binomial(trials, 1/2).
double sign_test_p(std::size_t wins, std::size_t trials);

}  // namespace waso::test
