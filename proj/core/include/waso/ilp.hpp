#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "waso/graph.hpp"

namespace waso::ilp {

enum class VarType { Binary, Integer };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  VarType type{VarType::Binary};
  double lower{0.0};
  double upper{1.0};
};

struct Term {
  std::size_t var{0};
  double coef{0.0};
};

/// Constraint families of the model: B1 (size), B2 (edge selection),
/// A1-A2 (single selected root), A3-A4 (path ends), A5 (flow continuity),
/// A6 (acyclic ordering), A7 (path edges inside the group).
enum class Family { B1, B2, A1, A2, A3, A4, A5, A6, A7 };
std::string_view to_string(Family f) noexcept;

struct Constraint {
  std::string name;
  Family family{Family::B1};
  std::vector<Term> terms;
  Sense sense{Sense::LessEqual};
  double rhs{0.0};
  // (root, target) pair for path rows, -1 otherwise
  long root{-1};
  long target{-1};
};

/// How path edges are tied to selected nodes.
enum class PathEdgeBound {
  /// p <= 2(x_m + x_n): admits a path edge with only one selected endpoint.
  PaperLiteral,
  /// p <= x_m and p <= x_n: every path edge lies inside the group.
  PerEndpoint,
};

struct IlpOptions {
  PathEdgeBound path_edges{PathEdgeBound::PerEndpoint};
  bool override_guard{false};
};

inline constexpr std::size_t kMaxExportNodes = 60;

class IlpModel {
 public:
  std::vector<Variable> variables;
  std::vector<Term> objective;  // maximised
  std::vector<Constraint> constraints;

  std::size_t add_variable(Variable v);
  /// Index of a named variable; throws NotFound.
  std::size_t var(const std::string& name) const;
  bool has_var(const std::string& name) const;

  double objective_value(std::span<const double> values) const;
  double lhs(const Constraint& c, std::span<const double> values) const;
  bool satisfied(const Constraint& c, std::span<const double> values) const;
  /// Index of the first violated row (bounds and integrality included as
  /// row -1), or nullopt-equivalent npos when everything holds.
  std::size_t first_violation(std::span<const double> values) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

/// Integer program for a connected k-group with the root/path formulation.
/// Directed edge set E holds both orientations of every adjacent pair.
/// Variables: x_i, y_i_j, r_i, p_i_j_m_n (i != j), d_i_j_m (i != j),
/// with d integer in [0, n]. The strict ordering row is written as
/// d_m - d_n + n p <= n - 1. Pairs with negative tightness also get
/// x_i + x_j - y_i_j <= 1 so the pair term cannot be dropped.
IlpModel export_ilp(const SocialGraph& graph, std::size_t k,
                    const IlpOptions& options = {});

/// CPLEX LP text format.
void write_lp(std::ostream& out, const IlpModel& model);

/// Variable names, exposed so tests and tools build assignments by name.
std::string x_name(NodeId i);
std::string y_name(NodeId i, NodeId j);
std::string r_name(NodeId i);
std::string p_name(NodeId i, NodeId j, NodeId m, NodeId n);
std::string d_name(NodeId i, NodeId j, NodeId m);

}  // namespace waso::ilp
