#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waso/config.hpp"
#include "waso/graph.hpp"
#include "waso/solvers.hpp"

namespace waso::scenario {

struct MergeResult {
  SocialGraph graph;
  NodeId merged{0};
  std::vector<NodeId> old_to_new;  // i and j both map to `merged`
};

/// Replaces i and j by one node whose eta and incident tightness are the
/// sums of theirs. Edges between i and j are dropped. The merged node sits
/// at the smaller of the two ids and is labelled "label_i+label_j".
MergeResult merge_couple(const SocialGraph& graph, NodeId i, NodeId j);

/// 1 + sum|eta| + sum|tau| over every directed edge except those between
/// i and j, so marking the same pair again reproduces the same weight.
double default_foe_penalty(const SocialGraph& graph, NodeId i, NodeId j);

/// Sets tau(i,j) = tau(j,i) = -M. M defaults to default_foe_penalty.
SocialGraph mark_foe(const SocialGraph& graph, NodeId i, NodeId j,
                     std::optional<double> penalty = std::nullopt);

enum class Profile { Invitation, Exhibition, Party };

struct ProfileResult {
  SocialGraph graph;
  std::vector<NodeId> new_to_old;
};

/// Invitation keeps the host and its neighbours and sets lambda = 1 on the
/// neighbours. Exhibition sets every lambda to 1, Party every lambda to 0.
/// Evaluate the result with WeightMode::LambdaWeighted.
ProfileResult apply_lambda_profile(const SocialGraph& graph, Profile profile,
                                   NodeId host = 0);

struct VirtualNodeResult {
  SocialGraph graph;
  NodeId id{0};
};

/// Appends a node with eta = epsilon + sum_i (|eta_i| + sum_j |tau_ij|),
/// lambda = 1 and zero-tightness edges to and from every other node.
VirtualNodeResult add_virtual_node(const SocialGraph& graph,
                                   double epsilon = 1.0);

/// Best k-group without the connectivity constraint: solves for k+1 nodes
/// on the graph with a virtual node and strips it. Willingness and the
/// connected flag are recomputed on `graph`.
SolveOutcome solve_waso_dis(const SocialGraph& graph, const SolverConfig& config,
                            double epsilon = 1.0,
                            const SolverHooks& hooks = {});

enum class Kind { CoupleMerge, Foe, Invitation, Exhibition, Party, SeparateGroups };

/// JSON form: {"kind": "couple"|"foe"|"invitation"|"exhibition"|"party"|
/// "separate-groups", "params": {...}}. Params: "pairs" ([[a,b],...]),
/// "penalty", "host", "epsilon". Node references are labels; JSON numbers
/// are read as labels too.
struct ScenarioSpec {
  Kind kind{Kind::Exhibition};
  std::vector<std::pair<std::string, std::string>> pairs;
  std::optional<double> penalty;
  std::string host;
  double epsilon{1.0};
};

ScenarioSpec parse_scenario(const std::string& json_text);
std::string to_json(const ScenarioSpec& spec);

/// Graph and solver settings after applying a scenario.
struct Prepared {
  SocialGraph graph;
  WeightMode mode{WeightMode::Unweighted};
  bool disconnected_allowed{false};
  double epsilon{1.0};
  std::vector<std::string> warnings;
};

Prepared apply_scenario(const SocialGraph& graph, const ScenarioSpec& spec,
                        WeightMode base_mode = WeightMode::Unweighted);

/// apply_scenario followed by the matching solve. Member ids refer to
/// prepared.graph.
SolveOutcome solve_prepared(const Prepared& prepared, SolverConfig config,
                            const SolverHooks& hooks = {});

}  // namespace waso::scenario
