#include "waso/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json_util.hpp"
#include "waso/io.hpp"
#include "waso/solvers.hpp"

namespace waso::experiment {

using detail::format_double;

std::string_view to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::K: return "k";
    case Axis::Budget: return "T";
    case Axis::Starts: return "m";
    case Axis::Rho: return "rho";
    case Axis::Smooth: return "w";
  }
  return "?";
}

namespace {

Axis parse_axis(const std::string& s) {
  for (Axis a : {Axis::K, Axis::Budget, Axis::Starts, Axis::Rho, Axis::Smooth}) {
    if (to_string(a) == s) return a;
  }
  throw Error(ErrorCode::Parse, "unknown sweep axis '" + s + "' (k, T, m, rho, w)");
}

std::size_t as_count(double v, Axis axis) {
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "axis " + std::string(to_string(axis)) + " needs whole numbers");
  }
  return static_cast<std::size_t>(v);
}

SolverConfig config_for(const ExperimentSpec& spec, double value, Algorithm solver,
                        std::uint64_t seed) {
  SolverConfig c = spec.base;
  c.algorithm = solver;
  c.seed = seed;
  c.workers = 1;
  switch (spec.axis) {
    case Axis::K: c.k = as_count(value, spec.axis); break;
    case Axis::Budget: c.budget = as_count(value, spec.axis); break;
    case Axis::Starts: c.starts = as_count(value, spec.axis); break;
    case Axis::Rho: c.rho = value; break;
    case Axis::Smooth: c.smooth = value; break;
  }
  return c;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

ExperimentSpec parse_spec(const std::string& text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("experiment spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, "experiment spec must be an object");

  ExperimentSpec spec;
  try {
    if (j.contains("graph")) {
      const auto& g = j["graph"];
      spec.edges = resolve(base_dir, g.at("edges").get<std::string>());
      if (g.contains("scores")) spec.scores = resolve(base_dir, g["scores"].get<std::string>());
    } else if (j.contains("synthetic")) {
      const auto& s = j["synthetic"];
      synth::SynthSpec ss;
      ss.nodes = s.value("nodes", ss.nodes);
      ss.topology = synth::parse_topology(s.value("topology", std::string("ba")));
      ss.beta = s.value("beta", ss.beta);
      ss.seed = s.value("seed", ss.seed);
      ss.attach = s.value("attach", ss.attach);
      ss.avg_degree = s.value("avg_degree", ss.avg_degree);
      ss.tau_floor = s.value("tau_floor", ss.tau_floor);
      spec.synthetic = ss;
    } else {
      throw Error(ErrorCode::Parse, "experiment spec needs 'graph' or 'synthetic'");
    }
    spec.axis = parse_axis(j.at("axis").get<std::string>());
    spec.values = j.at("values").get<std::vector<double>>();
    spec.repetitions = j.value("repetitions", std::size_t{1});
    if (j.contains("seeds")) {
      spec.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
      if (!j.contains("repetitions")) spec.repetitions = spec.seeds.size();
    } else {
      const auto seed = j.value("seed", std::uint64_t{1});
      for (std::size_t r = 0; r < spec.repetitions; ++r) spec.seeds.push_back(seed + r);
    }
    for (const auto& tag : j.at("solvers")) {
      spec.solvers.push_back(parse_algorithm(tag.get<std::string>()));
    }
    if (j.contains("config")) spec.base = detail::config_from_json(j["config"]);
    if (j.contains("output")) spec.output = resolve(base_dir, j["output"].get<std::string>());
    if (j.contains("summary")) spec.summary = resolve(base_dir, j["summary"].get<std::string>());
    spec.timing = j.value("timing", true);
    spec.workers = j.value("workers", std::size_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad experiment spec: ") + e.what());
  }

  if (spec.values.empty()) throw Error(ErrorCode::InvalidArgument, "axis values are empty");
  if (spec.repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  if (spec.seeds.size() != spec.repetitions) {
    throw Error(ErrorCode::InvalidArgument, "need exactly one seed per repetition");
  }
  if (spec.solvers.empty()) throw Error(ErrorCode::InvalidArgument, "no solvers listed");
  if (spec.workers < 1) spec.workers = 1;
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::NotFound, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path.parent_path());
}

std::vector<Row> run_experiment(const ExperimentSpec& spec, const SocialGraph& graph) {
  const std::size_t per_value = spec.solvers.size() * spec.repetitions;
  std::vector<Row> rows(spec.values.size() * per_value);

  parallel_for(rows.size(), spec.workers, [&](std::size_t, std::size_t idx) {
    const std::size_t vi = idx / per_value;
    const std::size_t si = (idx % per_value) / spec.repetitions;
    const std::size_t rep = idx % spec.repetitions;
    Row& row = rows[idx];
    row.axis_value = spec.values[vi];
    row.solver = spec.solvers[si];
    row.rep = rep;
    row.seed = spec.seeds[rep];
    try {
      const SolverConfig config = config_for(spec, row.axis_value, row.solver, row.seed);
      const auto t0 = std::chrono::steady_clock::now();
      const SolveOutcome out = solve(graph, config);
      const auto t1 = std::chrono::steady_clock::now();
      row.willingness = out.solution.willingness;
      row.samples = out.report.samples;
      row.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      row.status = "ok";
    } catch (const Error& e) {
      row.status = std::string(to_string(e.code()));
    }
  });
  return rows;
}

std::vector<Row> run_experiment(const ExperimentSpec& spec) {
  const SocialGraph graph = spec.synthetic ? synth::synthesize(*spec.synthetic)
                                           : io::load_graph(spec.edges, spec.scores);
  std::vector<Row> rows = run_experiment(spec, graph);
  auto write = [&](const std::filesystem::path& path, auto&& fn) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::NotFound, "cannot write " + path.string());
    fn(out, rows, spec.timing);
  };
  write(spec.output, write_rows);
  write(spec.summary, write_summary);
  return rows;
}

void write_rows(std::ostream& out, const std::vector<Row>& rows, bool timing) {
  out << "axis,solver,rep,seed,willingness,time_ms,samples,status\n";
  for (const Row& r : rows) {
    out << format_double(r.axis_value) << ',' << to_string(r.solver) << ',' << r.rep << ','
        << r.seed << ',' << format_double(r.willingness) << ','
        << format_double(timing ? r.time_ms : 0.0) << ',' << r.samples << ',' << r.status
        << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<Row>& rows, bool timing) {
  struct Acc {
    std::vector<double> w, t, s;
  };
  // keep first-seen order of (axis, solver)
  std::vector<std::pair<double, Algorithm>> order;
  std::map<std::pair<double, int>, Acc> acc;
  for (const Row& r : rows) {
    const auto key = std::make_pair(r.axis_value, static_cast<int>(r.solver));
    if (!acc.count(key)) order.emplace_back(r.axis_value, r.solver);
    Acc& a = acc[key];
    if (r.status != "ok") continue;
    a.w.push_back(r.willingness);
    a.t.push_back(timing ? r.time_ms : 0.0);
    a.s.push_back(static_cast<double>(r.samples));
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  auto stdev = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  out << "axis,solver,runs,willingness_mean,willingness_stdev,time_ms_mean,"
         "time_ms_stdev,samples_mean\n";
  for (const auto& [value, solver] : order) {
    const Acc& a = acc[{value, static_cast<int>(solver)}];
    out << format_double(value) << ',' << to_string(solver) << ',' << a.w.size() << ','
        << format_double(mean(a.w)) << ',' << format_double(stdev(a.w)) << ','
        << format_double(mean(a.t)) << ',' << format_double(stdev(a.t)) << ','
        << format_double(mean(a.s)) << '\n';
  }
}

}  // namespace waso::experiment
