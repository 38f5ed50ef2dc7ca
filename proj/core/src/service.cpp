#include "waso/service.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "httplib.h"
#include "json_util.hpp"
#include "waso/io.hpp"
#include "waso/scenarios.hpp"
#include "waso/solvers.hpp"
#include "waso/synth.hpp"

namespace waso::service {

using nlohmann::json;

enum class Rsvp { Pending, Confirmed, Declined };

namespace {

std::string_view rsvp_tag(Rsvp r) {
  switch (r) {
    case Rsvp::Pending: return "pending";
    case Rsvp::Confirmed: return "confirmed";
    case Rsvp::Declined: return "declined";
  }
  return "?";
}

Rsvp parse_rsvp(const std::string& s) {
  if (s == "pending") return Rsvp::Pending;
  if (s == "confirmed") return Rsvp::Confirmed;
  if (s == "declined") return Rsvp::Declined;
  throw Error(ErrorCode::InvalidArgument, "status must be confirmed, declined or pending");
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::NotSolved: return 409;
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasibleStart:
    case ErrorCode::ScaleGuard: return 422;
    default: return 400;
  }
}

Response error_response(int status, std::string_view code, const std::string& message) {
  return {status, json{{"code", code}, {"message", message}}.dump()};
}

Response ok(const json& body, int status = 200) { return {status, body.dump()}; }

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::Parse, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("request body is not valid JSON: ") + e.what());
  }
}

NodeId node_ref(const SocialGraph& g, const json& v) {
  if (v.is_string()) return g.find(v.get<std::string>());
  if (v.is_number_integer()) return g.find(std::to_string(v.get<long long>()));
  throw Error(ErrorCode::Parse, "node references must be labels");
}

json graph_to_json(const SocialGraph& g) {
  auto nodes = json::array();
  auto edges = json::array();
  for (NodeId v = 0; v < g.size(); ++v) {
    nodes.push_back({{"label", g.label(v)}, {"eta", g.node(v).eta}, {"lambda", g.node(v).lambda}});
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.has_out) edges.push_back({{"from", g.label(v)}, {"to", g.label(nb.id)}, {"tau", nb.out}});
    }
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

SocialGraph graph_from_json(const json& j) {
  GraphBuilder b;
  std::map<std::string, NodeId> ids;
  for (const auto& n : j.at("nodes")) {
    const auto label = n.at("label").get<std::string>();
    ids[label] = b.add_node(n.at("eta").get<double>(), n.at("lambda").get<double>(), label);
  }
  for (const auto& e : j.at("edges")) {
    b.set_tightness(ids.at(e.at("from").get<std::string>()), ids.at(e.at("to").get<std::string>()),
                    e.at("tau").get<double>());
  }
  return b.build();
}

}  // namespace

struct Session {
  std::mutex mutex;
  std::string id;
  scenario::Prepared prepared;
  std::string scenario;  // JSON text, empty when none
  SolverConfig config;
  std::optional<Solution> solution;
  std::map<NodeId, Rsvp> rsvp;
  std::set<NodeId> declined;  // every node declined so far

  const SocialGraph& graph() const { return prepared.graph; }

  json labels(const std::vector<NodeId>& ids) const {
    auto arr = json::array();
    for (NodeId v : ids) arr.push_back(graph().label(v));
    return arr;
  }

  json solution_json() const {
    if (!solution) return nullptr;
    return detail::solution_to_json(graph(), *solution, prepared.mode);
  }

  json state() const {
    json rs = json::object();
    for (const auto& [v, r] : rsvp) rs[graph().label(v)] = rsvp_tag(r);
    return {{"id", id},
            {"nodes", graph().size()},
            {"edges", graph().num_directed_edges()},
            {"config", detail::config_to_json(config)},
            {"scenario", scenario.empty() ? json(nullptr) : json::parse(scenario)},
            {"solution", solution_json()},
            {"rsvp", rs},
            {"declined", labels({declined.begin(), declined.end()})}};
  }

  json snapshot() const {
    json rs = json::object();
    for (const auto& [v, r] : rsvp) rs[graph().label(v)] = rsvp_tag(r);
    return {{"id", id},
            {"graph", graph_to_json(graph())},
            {"weighted", prepared.mode == WeightMode::LambdaWeighted},
            {"disconnected_allowed", prepared.disconnected_allowed},
            {"epsilon", prepared.epsilon},
            {"scenario", scenario},
            {"config", detail::config_to_json(config)},
            {"solution", solution ? labels(solution->members) : json(nullptr)},
            {"rsvp", rs},
            {"declined", labels({declined.begin(), declined.end()})}};
  }

  void restore(const json& j) {
    id = j.at("id").get<std::string>();
    prepared.graph = graph_from_json(j.at("graph"));
    prepared.mode = j.at("weighted").get<bool>() ? WeightMode::LambdaWeighted : WeightMode::Unweighted;
    prepared.disconnected_allowed = j.at("disconnected_allowed").get<bool>();
    prepared.epsilon = j.at("epsilon").get<double>();
    scenario = j.at("scenario").get<std::string>();
    config = detail::config_from_json(j.at("config"));
    if (!j.at("solution").is_null()) {
      std::vector<NodeId> members;
      for (const auto& l : j["solution"]) members.push_back(graph().find(l.get<std::string>()));
      solution = make_solution(graph(), std::move(members), prepared.mode);
    }
    for (const auto& [label, r] : j.at("rsvp").items()) {
      rsvp[graph().find(label)] = parse_rsvp(r.get<std::string>());
    }
    for (const auto& l : j.at("declined")) declined.insert(graph().find(l.get<std::string>()));
  }
};

SessionStore::SessionStore(std::filesystem::path state_dir) : state_dir_(std::move(state_dir)) {
  if (!state_dir_.empty()) {
    std::filesystem::create_directories(state_dir_);
    load_snapshots();
  }
}

SessionStore::~SessionStore() = default;

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session " + id);
  return it->second;
}

void SessionStore::persist(const Session& s) const {
  if (state_dir_.empty()) return;
  const auto path = state_dir_ / (s.id + ".json");
  const auto tmp = state_dir_ / (s.id + ".json.tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::NotFound, "cannot write " + tmp.string());
    out << s.snapshot().dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void SessionStore::load_snapshots() {
  for (const auto& entry : std::filesystem::directory_iterator(state_dir_)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    std::stringstream buf;
    buf << in.rdbuf();
    auto s = std::make_shared<Session>();
    try {
      s->restore(json::parse(buf.str()));
    } catch (const std::exception&) {
      continue;  // unreadable snapshot: skip it
    }
    if (s->id.size() > 1 && s->id[0] == 's') {
      try {
        const std::uint64_t n = std::stoull(s->id.substr(1));
        if (n >= next_id_) next_id_ = n + 1;
      } catch (const std::exception&) {
      }
    }
    sessions_[s->id] = std::move(s);
  }
}

Response SessionStore::create(const std::string& body) {
  const json req = parse_body(body);
  auto s = std::make_shared<Session>();

  SocialGraph graph;
  try {
    if (req.contains("graph")) {
      const json& g = req["graph"];
      io::LoadOptions opts;
      opts.directed = g.value("directed", false);
      opts.normalize = g.value("normalize", false);
      graph = io::parse_graph_text(g.at("edges").get<std::string>(),
                                   g.value("scores", std::string()), opts);
    } else if (req.contains("synthetic")) {
      const json& sj = req["synthetic"];
      synth::SynthSpec spec;
      spec.nodes = sj.value("nodes", spec.nodes);
      spec.topology = synth::parse_topology(sj.value("topology", std::string("ba")));
      spec.beta = sj.value("beta", spec.beta);
      spec.seed = sj.value("seed", spec.seed);
      spec.attach = sj.value("attach", spec.attach);
      spec.avg_degree = sj.value("avg_degree", spec.avg_degree);
      spec.tau_floor = sj.value("tau_floor", spec.tau_floor);
      graph = synth::synthesize(spec);
    } else {
      throw Error(ErrorCode::InvalidArgument, "request needs 'graph' or 'synthetic'");
    }
    s->config = detail::config_from_json(req.value("config", json::object()));
    if (req.contains("scenario") && !req["scenario"].is_null()) {
      s->scenario = req["scenario"].dump();
      s->prepared = scenario::apply_scenario(graph, scenario::parse_scenario(s->scenario),
                                             s->config.mode);
    } else {
      s->prepared.graph = std::move(graph);
      s->prepared.mode = s->config.mode;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad session request: ") + e.what());
  }
  s->config.mode = s->prepared.mode;
  validate(s->config, s->graph().size());

  {
    std::unique_lock lock(mutex_);
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  std::lock_guard session_lock(s->mutex);
  persist(*s);
  json out = s->state();
  out["warnings"] = s->prepared.warnings;
  return ok(out, 201);
}

Response SessionStore::handle(std::string_view method, std::string_view path,
                              const std::string& body) {
  try {
    std::vector<std::string> parts;
    {
      std::string p(path);
      if (const auto q = p.find('?'); q != std::string::npos) p.resize(q);
      std::stringstream ss(p);
      std::string part;
      while (std::getline(ss, part, '/')) {
        if (!part.empty()) parts.push_back(part);
      }
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      return error_response(404, "not_found", "no route for " + std::string(path));
    }
    if (parts.size() == 1) {
      if (method != "POST") return error_response(405, "method_not_allowed", "use POST /sessions");
      return create(body);
    }

    auto s = find(parts[1]);
    std::lock_guard lock(s->mutex);
    const std::string action = parts.size() == 3 ? parts[2] : "";

    if (action.empty() || action == "graph") {
      if (method != "GET") return error_response(405, "method_not_allowed", "use GET");
      return ok(action.empty() ? s->state() : graph_to_json(s->graph()));
    }
    if (method != "POST") return error_response(405, "method_not_allowed", "use POST");
    const json req = parse_body(body);

    if (action == "solve") {
      SolveOutcome out = scenario::solve_prepared(s->prepared, s->config);
      s->solution = std::move(out.solution);
      s->rsvp.clear();
      s->declined.clear();
      persist(*s);
      json res = s->solution_json();
      res["samples"] = out.report.samples;
      res["warnings"] = out.report.warnings;
      return ok(res);
    }

    if (action == "rsvp") {
      if (!s->solution) throw Error(ErrorCode::NotSolved, "solve the session first");
      const NodeId v = node_ref(s->graph(), req.at("node"));
      const Rsvp r = parse_rsvp(req.at("status").get<std::string>());
      const auto& m = s->solution->members;
      if (!std::binary_search(m.begin(), m.end(), v)) {
        throw Error(ErrorCode::InvalidMember,
                    "node " + s->graph().label(v) + " is not in the current group");
      }
      s->rsvp[v] = r;
      persist(*s);
      return ok(s->state());
    }

    if (action == "replan") {
      if (!s->solution) throw Error(ErrorCode::NotSolved, "solve the session first");
      if (s->prepared.disconnected_allowed) {
        throw Error(ErrorCode::InvalidArgument, "replanning needs a connected-group session");
      }
      std::vector<NodeId> confirmed, declined(s->declined.begin(), s->declined.end());
      bool new_decline = false;
      for (const auto& [v, r] : s->rsvp) {
        if (r == Rsvp::Confirmed) confirmed.push_back(v);
        if (r == Rsvp::Declined && !s->declined.count(v)) {
          declined.push_back(v);
          new_decline = true;
        }
      }
      const bool force = req.value("force", false);
      if (!new_decline && !force) {
        json res = s->solution_json();
        res["replanned"] = false;
        return ok(res);
      }
      // compute first, commit after: a failure leaves the session untouched
      SolveOutcome out = online_replan(s->graph(), *s->solution, confirmed, declined, s->config);
      s->solution = std::move(out.solution);
      s->declined.insert(declined.begin(), declined.end());
      std::map<NodeId, Rsvp> next;
      for (NodeId v : confirmed) next[v] = Rsvp::Confirmed;
      for (NodeId v : s->declined) next[v] = Rsvp::Declined;
      s->rsvp = std::move(next);
      persist(*s);
      json res = s->solution_json();
      res["replanned"] = true;
      res["samples"] = out.report.samples;
      return ok(res);
    }

    if (action == "evaluate") {
      std::vector<NodeId> members;
      for (const auto& v : req.at("members")) members.push_back(node_ref(s->graph(), v));
      std::sort(members.begin(), members.end());
      if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw Error(ErrorCode::InvalidArgument, "members repeat a node");
      }
      if (members.size() > s->config.k) {
        throw Error(ErrorCode::InvalidArgument, "more than k members picked");
      }
      Solution pick;
      if (!members.empty()) pick = make_solution(s->graph(), members, s->prepared.mode);
      return ok(detail::solution_to_json(s->graph(), pick, s->prepared.mode));
    }

    return error_response(404, "not_found", "no route for " + std::string(path));
  } catch (const Error& e) {
    return error_response(http_status(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "parse", e.what());
  }
}

void serve(SessionStore& store, const std::string& host, int port) {
  httplib::Server server;
  auto bind = [&](const httplib::Request& req, httplib::Response& res) {
    const Response r = store.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  server.Get(R"(/sessions/.*)", bind);
  server.Post(R"(/sessions(/.*)?)", bind);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });
  if (!server.listen(host, port)) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace waso::service
