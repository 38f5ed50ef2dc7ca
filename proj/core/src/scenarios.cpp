#include "waso/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "waso/oracle.hpp"

namespace waso::scenario {

namespace {

void require_node(const SocialGraph& graph, NodeId v) {
  if (v >= graph.size()) {
    throw Error(ErrorCode::InvalidMember,
                "node id " + std::to_string(v) + " is not in the graph");
  }
}

GraphBuilder copy_nodes(const SocialGraph& graph) {
  GraphBuilder b;
  for (NodeId v = 0; v < graph.size(); ++v) {
    b.add_node(graph.node(v).eta, graph.node(v).lambda, graph.label(v));
  }
  return b;
}

void copy_edges(const SocialGraph& graph, GraphBuilder& b) {
  for (NodeId v = 0; v < graph.size(); ++v) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (nb.has_out) b.set_tightness(v, nb.id, nb.out);
    }
  }
}

}  // namespace

MergeResult merge_couple(const SocialGraph& graph, NodeId i, NodeId j) {
  require_node(graph, i);
  require_node(graph, j);
  if (i == j) throw Error(ErrorCode::InvalidArgument, "cannot merge a node with itself");
  if (i > j) std::swap(i, j);

  MergeResult res;
  res.old_to_new.resize(graph.size());
  GraphBuilder b;
  for (NodeId v = 0; v < graph.size(); ++v) {
    if (v == j) {
      res.old_to_new[v] = res.old_to_new[i];
      continue;
    }
    if (v == i) {
      const auto& a = graph.node(i);
      const auto& c = graph.node(j);
      res.merged = b.add_node(a.eta + c.eta, (a.lambda + c.lambda) / 2.0,
                              graph.label(i) + "+" + graph.label(j));
      res.old_to_new[v] = res.merged;
    } else {
      res.old_to_new[v] =
          b.add_node(graph.node(v).eta, graph.node(v).lambda, graph.label(v));
    }
  }

  // sum tightness per (from, to) in the merged id space
  std::vector<std::vector<std::pair<NodeId, double>>> acc(b.size());
  auto add = [&](NodeId from, NodeId to, double tau) {
    for (auto& [id, w] : acc[from]) {
      if (id == to) {
        w += tau;
        return;
      }
    }
    acc[from].emplace_back(to, tau);
  };
  for (NodeId v = 0; v < graph.size(); ++v) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (!nb.has_out) continue;
      const NodeId from = res.old_to_new[v];
      const NodeId to = res.old_to_new[nb.id];
      if (from == to) continue;  // internal i-j edge
      add(from, to, nb.out);
    }
  }
  for (NodeId from = 0; from < acc.size(); ++from) {
    for (const auto& [to, w] : acc[from]) b.set_tightness(from, to, w);
  }
  res.graph = b.build();
  return res;
}

double default_foe_penalty(const SocialGraph& graph, NodeId i, NodeId j) {
  double total = 1.0;
  for (NodeId v = 0; v < graph.size(); ++v) {
    total += std::abs(graph.node(v).eta);
    for (const Neighbor& nb : graph.neighbors(v)) {
      const bool pair = (v == i && nb.id == j) || (v == j && nb.id == i);
      if (nb.has_out && !pair) total += std::abs(nb.out);
    }
  }
  return total;
}

SocialGraph mark_foe(const SocialGraph& graph, NodeId i, NodeId j,
                     std::optional<double> penalty) {
  require_node(graph, i);
  require_node(graph, j);
  if (i == j) throw Error(ErrorCode::InvalidArgument, "a node cannot be its own foe");
  const double m = penalty ? *penalty : default_foe_penalty(graph, i, j);
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidArgument, "foe penalty must be positive");
  GraphBuilder b = copy_nodes(graph);
  copy_edges(graph, b);
  b.set_tightness(i, j, -m);
  b.set_tightness(j, i, -m);
  return b.build();
}

ProfileResult apply_lambda_profile(const SocialGraph& graph, Profile profile,
                                   NodeId host) {
  ProfileResult res;
  if (profile != Profile::Invitation) {
    const double lambda = profile == Profile::Exhibition ? 1.0 : 0.0;
    GraphBuilder b = copy_nodes(graph);
    for (NodeId v = 0; v < graph.size(); ++v) b.set_lambda(v, lambda);
    copy_edges(graph, b);
    res.graph = b.build();
    res.new_to_old.resize(graph.size());
    for (NodeId v = 0; v < graph.size(); ++v) res.new_to_old[v] = v;
    return res;
  }

  require_node(graph, host);
  if (graph.neighbors(host).empty()) {
    throw Error(ErrorCode::EmptyCandidate,
                "host " + graph.label(host) + " has no neighbours to invite");
  }
  std::vector<NodeId> keep{host};
  for (const Neighbor& nb : graph.neighbors(host)) keep.push_back(nb.id);
  std::sort(keep.begin(), keep.end());
  std::vector<NodeId> map;
  const SocialGraph sub = induced_subgraph(graph, keep, &map);
  GraphBuilder b = copy_nodes(sub);
  for (NodeId v = 0; v < sub.size(); ++v) {
    if (v != map[host]) b.set_lambda(v, 1.0);
  }
  copy_edges(sub, b);
  res.graph = b.build();
  res.new_to_old = keep;
  return res;
}

VirtualNodeResult add_virtual_node(const SocialGraph& graph, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  double mass = epsilon;
  for (NodeId v = 0; v < graph.size(); ++v) {
    mass += std::abs(graph.node(v).eta);
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (nb.has_out) mass += std::abs(nb.out);
    }
  }
  GraphBuilder b = copy_nodes(graph);
  copy_edges(graph, b);
  VirtualNodeResult res;
  std::string label = "__virtual";
  while (true) {
    try {
      graph.find(label);
      label += "_";
    } catch (const Error&) {
      break;
    }
  }
  res.id = b.add_node(mass, 1.0, label);
  for (NodeId v = 0; v < graph.size(); ++v) {
    b.set_tightness(res.id, v, 0.0);
    b.set_tightness(v, res.id, 0.0);
  }
  res.graph = b.build();
  return res;
}

SolveOutcome solve_waso_dis(const SocialGraph& graph, const SolverConfig& config,
                            double epsilon, const SolverHooks& hooks) {
  validate(config, graph.size());
  const auto aug = add_virtual_node(graph, epsilon);
  SolverConfig inner = config;
  inner.k = config.k + 1;
  SolveOutcome out = solve(aug.graph, inner, hooks);

  std::vector<NodeId> members;
  for (NodeId v : out.solution.members) {
    if (v != aug.id) members.push_back(v);
  }
  if (members.size() > config.k) {
    // the virtual node was missed; keep the best k of the k+1 members
    std::vector<NodeId> best;
    double best_w = 0.0;
    for (std::size_t drop = 0; drop < members.size(); ++drop) {
      std::vector<NodeId> trial = members;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(drop));
      const double w = willingness(graph, trial, config.mode);
      if (best.empty() || better_group(w, trial, best_w, best)) {
        best = trial;
        best_w = w;
      }
    }
    members = std::move(best);
    out.report.warnings.push_back("virtual node missing from the k+1 solution");
  }
  out.solution = make_solution(graph, std::move(members), config.mode);
  for (auto& s : out.report.starts) {
    if (s == aug.id) s = kInvalidNode;
  }
  std::erase(out.report.starts, kInvalidNode);
  return out;
}

namespace {

std::string label_of(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::Parse, "node references must be labels or integers");
}

Kind parse_kind(const std::string& s) {
  if (s == "couple" || s == "couple-merge") return Kind::CoupleMerge;
  if (s == "foe") return Kind::Foe;
  if (s == "invitation") return Kind::Invitation;
  if (s == "exhibition") return Kind::Exhibition;
  if (s == "party") return Kind::Party;
  if (s == "separate-groups") return Kind::SeparateGroups;
  throw Error(ErrorCode::Parse, "unknown scenario kind '" + s + "'");
}

std::string kind_tag(Kind k) {
  switch (k) {
    case Kind::CoupleMerge: return "couple";
    case Kind::Foe: return "foe";
    case Kind::Invitation: return "invitation";
    case Kind::Exhibition: return "exhibition";
    case Kind::Party: return "party";
    case Kind::SeparateGroups: return "separate-groups";
  }
  return "?";
}

}  // namespace

namespace {

ScenarioSpec from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::Parse, "scenario must be an object with a string 'kind'");
  }
  ScenarioSpec spec;
  spec.kind = parse_kind(j["kind"].get<std::string>());
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  if (!params.is_object()) throw Error(ErrorCode::Parse, "scenario params must be an object");
  try {
    if (params.contains("pairs")) {
      for (const auto& p : params["pairs"]) {
        if (!p.is_array() || p.size() != 2) {
          throw Error(ErrorCode::Parse, "each pair must be a two-element array");
        }
        spec.pairs.emplace_back(label_of(p[0]), label_of(p[1]));
      }
    }
    if (params.contains("penalty")) {
      spec.penalty = params["penalty"].get<double>();
      if (!(*spec.penalty > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "foe penalty must be positive");
      }
    }
    if (params.contains("host")) spec.host = label_of(params["host"]);
    if (params.contains("epsilon")) spec.epsilon = params["epsilon"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad scenario params: ") + e.what());
  }
  if (!(spec.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if ((spec.kind == Kind::CoupleMerge || spec.kind == Kind::Foe) && spec.pairs.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scenario needs at least one pair");
  }
  if (spec.kind == Kind::Invitation && spec.host.empty()) {
    throw Error(ErrorCode::InvalidArgument, "invitation needs a host");
  }
  return spec;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("scenario is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::string to_json(const ScenarioSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  if (!spec.pairs.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& [a, b] : spec.pairs) arr.push_back({a, b});
    params["pairs"] = arr;
  }
  if (spec.penalty) params["penalty"] = *spec.penalty;
  if (!spec.host.empty()) params["host"] = spec.host;
  if (spec.kind == Kind::SeparateGroups) params["epsilon"] = spec.epsilon;
  return nlohmann::json{{"kind", kind_tag(spec.kind)}, {"params", params}}.dump();
}

Prepared apply_scenario(const SocialGraph& graph, const ScenarioSpec& spec,
                        WeightMode base_mode) {
  Prepared out;
  out.graph = graph;
  out.mode = base_mode;
  switch (spec.kind) {
    case Kind::CoupleMerge:
      for (const auto& [a, b] : spec.pairs) {
        const NodeId i = out.graph.find(a);
        const NodeId j = out.graph.find(b);
        out.graph = merge_couple(out.graph, i, j).graph;
      }
      out.warnings.push_back("couple merge: each merged pair counts as one node; adjust k by " +
                             std::to_string(spec.pairs.size()));
      break;
    case Kind::Foe:
      for (const auto& [a, b] : spec.pairs) {
        out.graph = mark_foe(out.graph, out.graph.find(a), out.graph.find(b), spec.penalty);
      }
      break;
    case Kind::Invitation:
      out.graph = apply_lambda_profile(out.graph, Profile::Invitation,
                                       out.graph.find(spec.host)).graph;
      out.mode = WeightMode::LambdaWeighted;
      break;
    case Kind::Exhibition:
      out.graph = apply_lambda_profile(out.graph, Profile::Exhibition).graph;
      out.mode = WeightMode::LambdaWeighted;
      break;
    case Kind::Party:
      out.graph = apply_lambda_profile(out.graph, Profile::Party).graph;
      out.mode = WeightMode::LambdaWeighted;
      break;
    case Kind::SeparateGroups:
      out.disconnected_allowed = true;
      out.epsilon = spec.epsilon;
      break;
  }
  return out;
}

SolveOutcome solve_prepared(const Prepared& prepared, SolverConfig config,
                            const SolverHooks& hooks) {
  config.mode = prepared.mode;
  SolveOutcome out = prepared.disconnected_allowed
                         ? solve_waso_dis(prepared.graph, config, prepared.epsilon, hooks)
                         : solve(prepared.graph, config, hooks);
  out.report.warnings.insert(out.report.warnings.begin(), prepared.warnings.begin(),
                             prepared.warnings.end());
  return out;
}

}  // namespace waso::scenario
