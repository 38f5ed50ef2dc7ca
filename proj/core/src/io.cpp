#include "waso/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace waso::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_real(const std::string& token, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) +
                                      ": expected a number, got '" + token +
                                      "'");
  }
  return value;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

struct Labels {
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::string> names;

  NodeId get(const std::string& name) {
    auto [it, inserted] =
        index.try_emplace(name, static_cast<NodeId>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  }
};

struct RawEdge {
  NodeId u;
  NodeId v;
  double t;
};

void normalize_in_place(std::vector<double>& values) {
  if (values.empty()) return;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double a = *lo;
  const double span = *hi - *lo;
  for (double& x : values) x = span > 0.0 ? (x - a) / span : 1.0;
}

}  // namespace

SocialGraph parse_graph(std::istream& edges, std::istream* scores,
                        const LoadOptions& options) {
  Labels labels;
  struct Score {
    double eta;
    double lambda;
  };
  std::unordered_map<NodeId, Score> score_of;

  if (scores) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(*scores, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto tok = tokens(line);
      if (tok.empty()) continue;
      if (tok.size() < 2 || tok.size() > 3) {
        throw Error(ErrorCode::Parse, "scores line " + std::to_string(lineno) +
                                          ": expected `v eta [lambda]`");
      }
      const NodeId v = labels.get(tok[0]);
      Score s{parse_real(tok[1], lineno), options.default_lambda};
      if (tok.size() == 3) s.lambda = parse_real(tok[2], lineno);
      score_of[v] = s;
    }
  }

  bool directed = options.directed;
  bool header_allowed = true;
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    const std::string t = lower(trim(line));
    if (t.empty()) continue;
    if (header_allowed && (t == "directed" || t == "# directed" ||
                           t == "#directed")) {
      directed = true;
      header_allowed = false;
      continue;
    }
    std::string body = line;
    const auto hash = body.find('#');
    if (hash != std::string::npos) body.erase(hash);
    auto tok = tokens(body);
    if (tok.empty()) continue;
    header_allowed = false;
    if (tok.size() < 2 || tok.size() > 3) {
      throw Error(ErrorCode::Parse, "edges line " + std::to_string(lineno) +
                                        ": expected `u v [t]`");
    }
    const double w = tok.size() == 3 ? parse_real(tok[2], lineno) : 1.0;
    const NodeId u = labels.get(tok[0]);
    const NodeId v = labels.get(tok[1]);
    if (u == v) continue;  // self-loops carry no group semantics
    raw.push_back({u, v, w});
  }

  std::vector<double> etas(labels.names.size(), 0.0);
  std::vector<double> lambdas(labels.names.size(), options.default_lambda);
  for (const auto& [v, s] : score_of) {
    etas[v] = s.eta;
    lambdas[v] = s.lambda;
  }
  if (options.normalize) {
    normalize_in_place(etas);
    std::vector<double> ws;
    ws.reserve(raw.size());
    for (const auto& e : raw) ws.push_back(e.t);
    normalize_in_place(ws);
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i].t = ws[i];
  }

  GraphBuilder builder;
  for (std::size_t i = 0; i < labels.names.size(); ++i) {
    builder.add_node(etas[i], lambdas[i], labels.names[i]);
  }
  for (const auto& e : raw) {
    if (directed) {
      builder.set_tightness(e.u, e.v, e.t);
    } else {
      builder.add_undirected(e.u, e.v, e.t);
    }
  }
  return builder.build();
}

SocialGraph parse_graph_text(const std::string& edges,
                             const std::string& scores,
                             const LoadOptions& options) {
  std::istringstream e(edges);
  if (scores.empty()) return parse_graph(e, nullptr, options);
  std::istringstream s(scores);
  return parse_graph(e, &s, options);
}

SocialGraph load_graph(const std::filesystem::path& edges,
                       const std::filesystem::path& scores,
                       const LoadOptions& options) {
  std::ifstream e(edges);
  if (!e) {
    throw Error(ErrorCode::NotFound, "cannot open " + edges.string());
  }
  if (scores.empty()) return parse_graph(e, nullptr, options);
  std::ifstream s(scores);
  if (!s) {
    throw Error(ErrorCode::NotFound, "cannot open " + scores.string());
  }
  return parse_graph(e, &s, options);
}

void write_edges(std::ostream& out, const SocialGraph& graph) {
  bool symmetric = true;
  for (NodeId i = 0; i < graph.size() && symmetric; ++i) {
    for (const Neighbor& nb : graph.neighbors(i)) {
      if (nb.has_out != nb.has_in || nb.out != nb.in) {
        symmetric = false;
        break;
      }
    }
  }
  out.precision(std::numeric_limits<double>::max_digits10);
  if (!symmetric) out << "directed\n";
  for (NodeId i = 0; i < graph.size(); ++i) {
    for (const Neighbor& nb : graph.neighbors(i)) {
      if (symmetric) {
        if (nb.id > i) {
          out << graph.label(i) << ' ' << graph.label(nb.id) << ' '
              << nb.out + nb.in << '\n';
        }
      } else if (nb.has_out) {
        out << graph.label(i) << ' ' << graph.label(nb.id) << ' ' << nb.out
            << '\n';
      }
    }
  }
}

void write_scores(std::ostream& out, const SocialGraph& graph) {
  out.precision(std::numeric_limits<double>::max_digits10);
  for (NodeId i = 0; i < graph.size(); ++i) {
    out << graph.label(i) << ' ' << graph.node(i).eta << ' '
        << graph.node(i).lambda << '\n';
  }
}

}  // namespace waso::io
