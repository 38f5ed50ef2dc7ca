#include "waso/ilp.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace waso::ilp {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::B1: return "B1";
    case Family::B2: return "B2";
    case Family::A1: return "A1";
    case Family::A2: return "A2";
    case Family::A3: return "A3";
    case Family::A4: return "A4";
    case Family::A5: return "A5";
    case Family::A6: return "A6";
    case Family::A7: return "A7";
  }
  return "?";
}

std::string x_name(NodeId i) { return "x_" + std::to_string(i); }
std::string y_name(NodeId i, NodeId j) {
  return "y_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string r_name(NodeId i) { return "r_" + std::to_string(i); }
std::string p_name(NodeId i, NodeId j, NodeId m, NodeId n) {
  return "p_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(m) + "_" + std::to_string(n);
}
std::string d_name(NodeId i, NodeId j, NodeId m) {
  return "d_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(m);
}

std::size_t IlpModel::add_variable(Variable v) {
  const std::size_t id = variables.size();
  auto [it, inserted] = index_.emplace(v.name, id);
  if (!inserted) {
    throw Error(ErrorCode::InvalidArgument, "duplicate variable " + v.name);
  }
  variables.push_back(std::move(v));
  return id;
}

std::size_t IlpModel::var(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw Error(ErrorCode::NotFound, "no variable named " + name);
  }
  return it->second;
}

bool IlpModel::has_var(const std::string& name) const {
  return index_.count(name) != 0;
}

double IlpModel::objective_value(std::span<const double> values) const {
  double total = 0.0;
  for (const Term& t : objective) total += t.coef * values[t.var];
  return total;
}

double IlpModel::lhs(const Constraint& c, std::span<const double> values) const {
  double total = 0.0;
  for (const Term& t : c.terms) total += t.coef * values[t.var];
  return total;
}

bool IlpModel::satisfied(const Constraint& c,
                         std::span<const double> values) const {
  // all coefficients and assignments are small integers; compare exactly
  const double v = lhs(c, values);
  switch (c.sense) {
    case Sense::LessEqual: return v <= c.rhs;
    case Sense::GreaterEqual: return v >= c.rhs;
    case Sense::Equal: return v == c.rhs;
  }
  return false;
}

std::size_t IlpModel::first_violation(std::span<const double> values) const {
  if (values.size() != variables.size()) {
    throw Error(ErrorCode::LengthMismatch, "assignment has the wrong length");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    const double x = values[i];
    if (x < v.lower || x > v.upper || x != std::floor(x)) return npos - 1;
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!satisfied(constraints[i], values)) return i;
  }
  return npos;
}

IlpModel export_ilp(const SocialGraph& graph, std::size_t k,
                    const IlpOptions& options) {
  const auto n = static_cast<NodeId>(graph.size());
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [1, n]");
  }
  if (!options.override_guard && n > kMaxExportNodes) {
    throw Error(ErrorCode::ScaleGuard,
                "model export refused for n=" + std::to_string(n) +
                    " (limit 60; the model grows as n^2 |E|)");
  }

  // directed edge set: both orientations of every adjacent pair
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId m = 0; m < n; ++m) {
    for (const Neighbor& nb : graph.neighbors(m)) edges.emplace_back(m, nb.id);
  }

  IlpModel model;
  std::vector<std::size_t> x(n), r(n);
  for (NodeId i = 0; i < n; ++i) {
    x[i] = model.add_variable({x_name(i)});
    model.objective.push_back({x[i], graph.node(i).eta});
  }
  for (auto [i, j] : edges) {
    const std::size_t y = model.add_variable({y_name(i, j)});
    model.objective.push_back({y, graph.tightness(i, j)});
  }
  for (NodeId i = 0; i < n; ++i) r[i] = model.add_variable({r_name(i)});

  const double big = static_cast<double>(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      for (auto [m, nn] : edges) model.add_variable({p_name(i, j, m, nn)});
      for (NodeId m = 0; m < n; ++m) {
        model.add_variable({d_name(i, j, m), VarType::Integer, 0.0, big});
      }
    }
  }

  auto row = [&](std::string name, Family fam, std::vector<Term> terms,
                 Sense sense, double rhs, long root = -1, long target = -1) {
    model.constraints.push_back(
        {std::move(name), fam, std::move(terms), sense, rhs, root, target});
  };

  {
    std::vector<Term> t;
    for (NodeId i = 0; i < n; ++i) t.push_back({x[i], 1.0});
    row("B1", Family::B1, std::move(t), Sense::Equal, static_cast<double>(k));
  }
  for (auto [i, j] : edges) {
    row("B2_" + std::to_string(i) + "_" + std::to_string(j), Family::B2,
        {{x[i], 1.0}, {x[j], 1.0}, {model.var(y_name(i, j)), -2.0}},
        Sense::GreaterEqual, 0.0);
    // a maximiser would drop a negative pair term; force it on
    if (graph.tightness(i, j) < 0.0) {
      row("B2n_" + std::to_string(i) + "_" + std::to_string(j), Family::B2,
          {{x[i], 1.0}, {x[j], 1.0}, {model.var(y_name(i, j)), -1.0}},
          Sense::LessEqual, 1.0);
    }
  }
  {
    std::vector<Term> t;
    for (NodeId i = 0; i < n; ++i) t.push_back({r[i], 1.0});
    row("A1", Family::A1, std::move(t), Sense::Equal, 1.0);
  }
  for (NodeId i = 0; i < n; ++i) {
    row("A2_" + std::to_string(i), Family::A2, {{r[i], 1.0}, {x[i], -1.0}},
        Sense::LessEqual, 0.0);
  }

  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::string ij = std::to_string(i) + "_" + std::to_string(j);
      const long li = i, lj = j;

      std::vector<Term> a3{{r[i], 1.0}, {x[j], 1.0}};
      for (const Neighbor& nb : graph.neighbors(i)) {
        a3.push_back({model.var(p_name(i, j, i, nb.id)), -1.0});
      }
      row("A3_" + ij, Family::A3, std::move(a3), Sense::LessEqual, 1.0, li, lj);

      std::vector<Term> a4{{r[i], 1.0}, {x[j], 1.0}};
      for (const Neighbor& nb : graph.neighbors(j)) {
        a4.push_back({model.var(p_name(i, j, nb.id, j)), -1.0});
      }
      row("A4_" + ij, Family::A4, std::move(a4), Sense::LessEqual, 1.0, li, lj);

      for (NodeId m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        std::vector<Term> a5;
        for (const Neighbor& nb : graph.neighbors(m)) {
          a5.push_back({model.var(p_name(i, j, nb.id, m)), 1.0});
          a5.push_back({model.var(p_name(i, j, m, nb.id)), -1.0});
        }
        row("A5_" + ij + "_" + std::to_string(m), Family::A5, std::move(a5),
            Sense::Equal, 0.0, li, lj);
      }

      for (auto [m, nn] : edges) {
        const std::size_t p = model.var(p_name(i, j, m, nn));
        const std::string tag = ij + "_" + std::to_string(m) + "_" + std::to_string(nn);
        row("A6_" + tag, Family::A6,
            {{model.var(d_name(i, j, m)), 1.0},
             {model.var(d_name(i, j, nn)), -1.0},
             {p, big}},
            Sense::LessEqual, big - 1.0, li, lj);
        if (options.path_edges == PathEdgeBound::PaperLiteral) {
          row("A7_" + tag, Family::A7, {{p, 1.0}, {x[m], -2.0}, {x[nn], -2.0}},
              Sense::LessEqual, 0.0, li, lj);
        } else {
          row("A7a_" + tag, Family::A7, {{p, 1.0}, {x[m], -1.0}},
              Sense::LessEqual, 0.0, li, lj);
          row("A7b_" + tag, Family::A7, {{p, 1.0}, {x[nn], -1.0}},
              Sense::LessEqual, 0.0, li, lj);
        }
      }
    }
  }
  return model;
}

namespace {

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_terms(std::ostream& out, const IlpModel& model,
                 const std::vector<Term>& terms) {
  bool first = true;
  std::size_t on_line = 0;
  for (const Term& t : terms) {
    if (t.coef == 0.0 && terms.size() > 1) continue;
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coef);
    if (first) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1.0) out << number(mag) << ' ';
    out << model.variables[t.var].name;
    first = false;
    ++on_line;
  }
  if (first) out << "0 " << model.variables.front().name;
}

}  // namespace

void write_lp(std::ostream& out, const IlpModel& model) {
  out << "\\ connected k-group willingness model\n";
  out << "Maximize\n obj: ";
  write_terms(out, model, model.objective);
  out << "\nSubject To\n";
  for (const Constraint& c : model.constraints) {
    out << ' ' << c.name << ": ";
    write_terms(out, model, c.terms);
    switch (c.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << number(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables) {
    if (v.type == VarType::Integer) {
      out << ' ' << number(v.lower) << " <= " << v.name
          << " <= " << number(v.upper) << '\n';
    }
  }
  out << "Binary\n";
  for (const Variable& v : model.variables) {
    if (v.type == VarType::Binary) out << ' ' << v.name << '\n';
  }
  out << "General\n";
  for (const Variable& v : model.variables) {
    if (v.type == VarType::Integer) out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

}  // namespace waso::ilp
