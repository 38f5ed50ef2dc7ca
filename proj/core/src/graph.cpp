#include "waso/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace waso {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::InvalidMember: return "invalid_member";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::InfeasibleStart: return "infeasible_start";
    case ErrorCode::EmptyCandidate: return "empty_candidate";
    case ErrorCode::ScaleGuard: return "scale_guard";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::NotSolved: return "not_solved";
  }
  return "unknown";
}

namespace {

const Neighbor* find_neighbor(std::span<const Neighbor> list, NodeId v) {
  auto it = std::lower_bound(
      list.begin(), list.end(), v,
      [](const Neighbor& nb, NodeId id) { return nb.id < id; });
  if (it == list.end() || it->id != v) return nullptr;
  return &*it;
}

void check_members(const SocialGraph& graph, std::span<const NodeId> members) {
  for (NodeId v : members) {
    if (v >= graph.size()) {
      throw Error(ErrorCode::InvalidMember,
                  "node id " + std::to_string(v) + " is not in the graph");
    }
  }
}

}  // namespace

double SocialGraph::tightness(NodeId from, NodeId to) const {
  const Neighbor* nb = find_neighbor(neighbors(from), to);
  return nb && nb->has_out ? nb->out : 0.0;
}

bool SocialGraph::has_edge(NodeId from, NodeId to) const {
  const Neighbor* nb = find_neighbor(neighbors(from), to);
  return nb && nb->has_out;
}

bool SocialGraph::adjacent(NodeId a, NodeId b) const {
  return find_neighbor(neighbors(a), b) != nullptr;
}

std::size_t SocialGraph::largest_component() const noexcept {
  if (component_sizes_.empty()) return 0;
  return *std::max_element(component_sizes_.begin(), component_sizes_.end());
}

NodeId SocialGraph::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorCode::NotFound, "unknown node label '" + label + "'");
  }
  return static_cast<NodeId>(it - labels_.begin());
}

GraphBuilder::GraphBuilder(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_node(0.0);
}

NodeId GraphBuilder::add_node(double eta, double lambda, std::string label) {
  const auto id = static_cast<NodeId>(nodes_.size());
  if (label.empty()) label = std::to_string(id);
  nodes_.push_back(NodeRecord{});
  labels_.push_back(std::move(label));
  out_.emplace_back();
  set_eta(id, eta);
  set_lambda(id, lambda);
  return id;
}

void GraphBuilder::check(NodeId v) const {
  if (v >= nodes_.size()) {
    throw Error(ErrorCode::InvalidMember,
                "node id " + std::to_string(v) + " is not in the graph");
  }
}

void GraphBuilder::set_eta(NodeId v, double eta) {
  check(v);
  if (!std::isfinite(eta)) {
    throw Error(ErrorCode::InvalidArgument, "interest score must be finite");
  }
  nodes_[v].eta = eta;
}

void GraphBuilder::set_lambda(NodeId v, double lambda) {
  check(v);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0,1]");
  }
  nodes_[v].lambda = lambda;
}

void GraphBuilder::set_tightness(NodeId from, NodeId to, double tau) {
  check(from);
  check(to);
  if (from == to) {
    throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
  }
  if (!std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "tightness must be finite");
  }
  auto& list = out_[from];
  for (auto& [id, w] : list) {
    if (id == to) {
      w = tau;
      return;
    }
  }
  list.emplace_back(to, tau);
}

void GraphBuilder::add_undirected(NodeId a, NodeId b, double t) {
  set_tightness(a, b, t / 2.0);
  set_tightness(b, a, t / 2.0);
}

void GraphBuilder::add_symmetric(NodeId a, NodeId b, double tau) {
  set_tightness(a, b, tau);
  set_tightness(b, a, tau);
}

SocialGraph GraphBuilder::build() const {
  SocialGraph g;
  const std::size_t n = nodes_.size();
  g.nodes_ = nodes_;
  g.labels_ = labels_;
  g.adjacency_.assign(n, {});

  for (NodeId i = 0; i < n; ++i) {
    for (const auto& [j, tau] : out_[i]) {
      auto upsert = [&](NodeId owner, NodeId other) -> Neighbor& {
        auto& list = g.adjacency_[owner];
        for (auto& nb : list) {
          if (nb.id == other) return nb;
        }
        list.push_back(Neighbor{other});
        return list.back();
      };
      Neighbor& fwd = upsert(i, j);
      fwd.out = tau;
      fwd.has_out = true;
      Neighbor& back = upsert(j, i);
      back.in = tau;
      back.has_in = true;
      ++g.directed_edges_;
    }
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }

  // components by iterative DFS
  g.component_.assign(n, static_cast<std::uint32_t>(-1));
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (g.component_[s] != static_cast<std::uint32_t>(-1)) continue;
    const auto cid = static_cast<std::uint32_t>(g.component_sizes_.size());
    std::size_t count = 0;
    stack.push_back(s);
    g.component_[s] = cid;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++count;
      for (const Neighbor& nb : g.adjacency_[v]) {
        if (g.component_[nb.id] == static_cast<std::uint32_t>(-1)) {
          g.component_[nb.id] = cid;
          stack.push_back(nb.id);
        }
      }
    }
    g.component_sizes_.push_back(count);
  }
  return g;
}

double willingness(const SocialGraph& graph, std::span<const NodeId> members,
                   WeightMode mode) {
  check_members(graph, members);
  if (members.empty()) return 0.0;
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  auto in_group = [&](NodeId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };

  double total = 0.0;
  for (NodeId i : sorted) {
    double social = 0.0;
    for (const Neighbor& nb : graph.neighbors(i)) {
      if (nb.has_out && in_group(nb.id)) social += nb.out;
    }
    const NodeRecord& rec = graph.node(i);
    if (mode == WeightMode::Unweighted) {
      total += rec.eta + social;
    } else {
      total += rec.lambda * rec.eta + (1.0 - rec.lambda) * social;
    }
  }
  return total;
}

bool is_connected(const SocialGraph& graph, std::span<const NodeId> members) {
  if (members.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "connectivity of an empty group is undefined");
  }
  check_members(graph, members);
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = sorted[stack.back()];
    stack.pop_back();
    for (const Neighbor& nb : graph.neighbors(v)) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), nb.id);
      if (it == sorted.end() || *it != nb.id) continue;
      auto pos = static_cast<std::size_t>(it - sorted.begin());
      if (!seen[pos]) {
        seen[pos] = 1;
        ++reached;
        stack.push_back(pos);
      }
    }
  }
  return reached == sorted.size();
}

std::vector<NodeId> frontier(const SocialGraph& graph,
                             std::span<const NodeId> partial) {
  check_members(graph, partial);
  std::vector<char> inside(graph.size(), 0);
  for (NodeId v : partial) inside[v] = 1;
  std::vector<char> marked(graph.size(), 0);
  std::vector<NodeId> out;
  for (NodeId v : partial) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (!inside[nb.id] && !marked[nb.id]) {
        marked[nb.id] = 1;
        out.push_back(nb.id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double node_mass(const SocialGraph& graph, NodeId v) {
  double sum = graph.node(v).eta;
  for (const Neighbor& nb : graph.neighbors(v)) sum += nb.out + nb.in;
  return sum;
}

SocialGraph induced_subgraph(const SocialGraph& graph,
                             std::span<const NodeId> keep,
                             std::vector<NodeId>* old_to_new) {
  check_members(graph, keep);
  std::vector<NodeId> map(graph.size(), kInvalidNode);
  std::vector<NodeId> order(keep.begin(), keep.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  GraphBuilder builder;
  for (NodeId v : order) {
    const NodeRecord& rec = graph.node(v);
    map[v] = builder.add_node(rec.eta, rec.lambda, graph.label(v));
  }
  for (NodeId v : order) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (nb.has_out && map[nb.id] != kInvalidNode) {
        builder.set_tightness(map[v], map[nb.id], nb.out);
      }
    }
  }
  if (old_to_new) *old_to_new = std::move(map);
  return builder.build();
}

Solution make_solution(const SocialGraph& graph, std::vector<NodeId> members,
                       WeightMode mode) {
  std::sort(members.begin(), members.end());
  Solution s;
  s.willingness = willingness(graph, members, mode);
  s.connected = members.empty() ? false : is_connected(graph, members);
  s.members = std::move(members);
  return s;
}

bool better_group(double w_a, std::span<const NodeId> a, double w_b,
                  std::span<const NodeId> b) {
  if (w_a != w_b) return w_a > w_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace waso
