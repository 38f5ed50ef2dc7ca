#include "json_util.hpp"

#include <algorithm>
#include <ostream>

#include "waso/report.hpp"

namespace waso::detail {

namespace {

template <typename T>
T read(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw Error(ErrorCode::Parse, "'" + key + "' must be a non-negative integer");
      }
    }
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::Parse, "'" + key + "' has the wrong type");
  }
}

}  // namespace

SolverConfig config_from_json(const nlohmann::json& j, SolverConfig c) {
  if (j.is_null()) return c;
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "k") c.k = read<std::size_t>(v, key);
    else if (key == "budget") c.budget = read<std::size_t>(v, key);
    else if (key == "starts") c.starts = read<std::size_t>(v, key);
    else if (key == "stages") c.stages = read<std::size_t>(v, key);
    else if (key == "rho") c.rho = read<double>(v, key);
    else if (key == "smooth") c.smooth = read<double>(v, key);
    else if (key == "alpha") c.alpha = read<double>(v, key);
    else if (key == "pb") c.confidence = read<double>(v, key);
    else if (key == "seed") c.seed = read<std::uint64_t>(v, key);
    else if (key == "algo") c.algorithm = parse_algorithm(read<std::string>(v, key));
    else if (key == "distribution") {
      const auto d = read<std::string>(v, key);
      if (d == "uniform") c.distribution = Distribution::Uniform;
      else if (d == "gaussian") c.distribution = Distribution::Gaussian;
      else throw Error(ErrorCode::Parse, "distribution must be uniform or gaussian");
    } else if (key == "backtrack") c.backtrack_threshold = read<double>(v, key);
    else if (key == "weighted_lambda") {
      c.mode = read<bool>(v, key) ? WeightMode::LambdaWeighted : WeightMode::Unweighted;
    } else if (key == "workers") c.workers = read<std::size_t>(v, key);
    else if (key == "brute_override") c.brute_override = read<bool>(v, key);
    else throw Error(ErrorCode::Parse, "unknown config key '" + key + "'");
  }
  return c;
}

nlohmann::json config_to_json(const SolverConfig& c) {
  return {
      {"k", c.k},
      {"budget", c.budget},
      {"starts", c.starts},
      {"stages", c.stages},
      {"rho", c.rho},
      {"smooth", c.smooth},
      {"alpha", c.alpha},
      {"pb", c.confidence},
      {"seed", c.seed},
      {"algo", std::string(to_string(c.algorithm))},
      {"distribution", c.distribution == Distribution::Gaussian ? "gaussian" : "uniform"},
      {"backtrack", c.backtrack_threshold},
      {"weighted_lambda", c.mode == WeightMode::LambdaWeighted},
      {"workers", c.workers},
      {"brute_override", c.brute_override},
  };
}

nlohmann::json solution_to_json(const SocialGraph& graph, const Solution& s,
                                WeightMode mode) {
  const bool weighted = mode == WeightMode::LambdaWeighted;
  auto members = nlohmann::json::array();
  auto ids = nlohmann::json::array();
  auto interest = nlohmann::json::array();
  auto ties = nlohmann::json::array();
  for (NodeId v : s.members) {
    const NodeRecord& rec = graph.node(v);
    members.push_back(graph.label(v));
    ids.push_back(v);
    interest.push_back({{"node", graph.label(v)},
                        {"eta", rec.eta},
                        {"contribution", weighted ? rec.lambda * rec.eta : rec.eta}});
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (!nb.has_out) continue;
      if (!std::binary_search(s.members.begin(), s.members.end(), nb.id)) continue;
      ties.push_back({{"from", graph.label(v)},
                      {"to", graph.label(nb.id)},
                      {"tau", nb.out},
                      {"contribution", weighted ? (1.0 - rec.lambda) * nb.out : nb.out}});
    }
  }
  return {{"members", members},
          {"ids", ids},
          {"willingness", s.willingness},
          {"connected", s.connected},
          {"interest", interest},
          {"tightness", ties}};
}

}  // namespace waso::detail

namespace waso {

std::string solution_json(const SocialGraph& graph, const SolveOutcome& outcome,
                          WeightMode mode, bool pretty) {
  nlohmann::json j = detail::solution_to_json(graph, outcome.solution, mode);
  const RunReport& r = outcome.report;
  auto starts = nlohmann::json::array();
  for (NodeId v : r.starts) starts.push_back(graph.label(v));
  j["report"] = {{"starts", starts},
                 {"stages", r.stages},
                 {"samples", r.samples},
                 {"backtracks", r.backtracks},
                 {"warnings", r.warnings}};
  return pretty ? j.dump(2) : j.dump();
}

void write_solution_csv(std::ostream& out, const SocialGraph& graph,
                        const Solution& solution, WeightMode mode) {
  out << "node,eta,contribution\n";
  for (NodeId v : solution.members) {
    const NodeRecord& rec = graph.node(v);
    double social = 0.0;
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (nb.has_out &&
          std::binary_search(solution.members.begin(), solution.members.end(), nb.id)) {
        social += nb.out;
      }
    }
    const double c = mode == WeightMode::LambdaWeighted
                         ? rec.lambda * rec.eta + (1.0 - rec.lambda) * social
                         : rec.eta + social;
    out << graph.label(v) << ',' << detail::format_double(rec.eta) << ','
        << detail::format_double(c) << '\n';
  }
  out << "total,," << detail::format_double(solution.willingness) << '\n';
  out << "connected,," << (solution.connected ? "true" : "false") << '\n';
}

}  // namespace waso
