#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "waso/error.hpp"

namespace waso {

using NodeId = std::uint32_t;

struct NodeRecord {
  double eta{0.0};     // interest score
  double lambda{0.5};  // interest/tightness blend, in [0,1]
};

/// One adjacency entry seen from the owning node i. `out` is tau(i->id),
/// `in` is tau(id->i); the entry exists when either direction was stored.
struct Neighbor {
  NodeId id{0};
  double out{0.0};
  double in{0.0};
  bool has_out{false};
  bool has_in{false};
};

enum class WeightMode { Unweighted, LambdaWeighted };

/// Immutable scored social graph with dense node ids. Neighbour lists are
/// sorted by id and hold both tightness directions, so connectivity and
/// frontier queries treat the graph as undirected.
class SocialGraph {
 public:
  SocialGraph() = default;

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t num_directed_edges() const noexcept { return directed_edges_; }

  const NodeRecord& node(NodeId v) const { return nodes_.at(v); }
  const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
  std::span<const Neighbor> neighbors(NodeId v) const {
    return adjacency_.at(v);
  }
  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Stored tightness tau(from->to); 0 when that direction is absent.
  double tightness(NodeId from, NodeId to) const;
  bool has_edge(NodeId from, NodeId to) const;
  /// True when the pair is adjacent in either direction.
  bool adjacent(NodeId a, NodeId b) const;

  /// Id of the connected component (undirected reachability) holding v.
  std::uint32_t component(NodeId v) const { return component_.at(v); }
  std::size_t component_size(NodeId v) const {
    return component_sizes_.at(component_.at(v));
  }
  std::size_t largest_component() const noexcept;

  /// Node lookup by label; throws NotFound.
  NodeId find(const std::string& label) const;

 private:
  friend class GraphBuilder;

  std::vector<NodeRecord> nodes_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::uint32_t> component_;
  std::vector<std::size_t> component_sizes_;
  std::size_t directed_edges_{0};
};

class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(std::size_t n);

  NodeId add_node(double eta, double lambda = 0.5, std::string label = {});
  void set_eta(NodeId v, double eta);
  void set_lambda(NodeId v, double lambda);

  /// Stores tau(from->to), replacing an earlier value for the same pair.
  void set_tightness(NodeId from, NodeId to, double tau);
  /// Undirected edge of weight t: stored as t/2 in each direction so that the
  /// directed double sum of the objective counts t exactly once.
  void add_undirected(NodeId a, NodeId b, double t);
  /// Undirected edge with the full weight in both directions.
  void add_symmetric(NodeId a, NodeId b, double tau);

  std::size_t size() const noexcept { return nodes_.size(); }

  SocialGraph build() const;

 private:
  void check(NodeId v) const;

  std::vector<NodeRecord> nodes_;
  std::vector<std::string> labels_;
  // (from, to) -> tau, kept sorted on build
  std::vector<std::vector<std::pair<NodeId, double>>> out_;
};

/// Group value: sum over members of eta plus tightness toward other members,
/// or the lambda-blended variant.
double willingness(const SocialGraph& graph, std::span<const NodeId> members,
                   WeightMode mode = WeightMode::Unweighted);

bool is_connected(const SocialGraph& graph, std::span<const NodeId> members);

/// Nodes outside `partial` adjacent (either direction) to some member; sorted.
std::vector<NodeId> frontier(const SocialGraph& graph,
                             std::span<const NodeId> partial);

/// eta_i plus incident tightness in both directions.
double node_mass(const SocialGraph& graph, NodeId v);

/// Induced subgraph on `keep` (any order); `old_to_new` receives the mapping
/// with `kInvalidNode` for dropped nodes.
inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);
SocialGraph induced_subgraph(const SocialGraph& graph,
                             std::span<const NodeId> keep,
                             std::vector<NodeId>* old_to_new = nullptr);

struct Solution {
  std::vector<NodeId> members;  // sorted ascending
  double willingness{0.0};
  bool connected{false};
};

/// Builds a Solution with willingness and connectivity recomputed from scratch.
Solution make_solution(const SocialGraph& graph, std::vector<NodeId> members,
                       WeightMode mode = WeightMode::Unweighted);

/// Deterministic preference: higher willingness, then lexicographically
/// smaller member list.
bool better_group(double w_a, std::span<const NodeId> a, double w_b,
                  std::span<const NodeId> b);

}  // namespace waso
