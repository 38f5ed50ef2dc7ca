// waso: solve, bench, synth and serve from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "waso/experiment.hpp"
#include "waso/ilp.hpp"
#include "waso/io.hpp"
#include "waso/report.hpp"
#include "waso/scenarios.hpp"
#include "waso/service.hpp"
#include "waso/solvers.hpp"
#include "waso/synth.hpp"

namespace {

int exit_code(waso::ErrorCode code) {
  using waso::ErrorCode;
  switch (code) {
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasibleStart:
    case ErrorCode::EmptyCandidate: return 3;
    case ErrorCode::ScaleGuard: return 4;
    case ErrorCode::NotFound: return 5;
    default: return 2;
  }
}

std::string read_text(const std::string& arg) {
  // "@path" reads the JSON from a file
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw waso::Error(waso::ErrorCode::NotFound, "cannot open " + arg.substr(1));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected k-group willingness solvers"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Pick a connected k-group from a scored graph");
  std::string graph_path, scores_path, algo = "cbas-nd", scenario, export_lp, format = "json";
  waso::SolverConfig cfg;
  bool weighted = false, directed = false, normalize = false, literal_a7 = false;
  solve->add_option("--graph", graph_path, "Edge list file")->required();
  solve->add_option("--scores", scores_path, "Node score file");
  solve->add_option("--k", cfg.k, "Group size");
  solve->add_option("--algo", algo, "dgreedy|rgreedy|cbas|cbas-nd|cbas-nd-g|brute");
  solve->add_option("--budget", cfg.budget, "Total samples T");
  solve->add_option("--starts", cfg.starts, "Start nodes m (0 = ceil(n/k))");
  solve->add_option("--stages", cfg.stages, "Stages r (0 = derived)");
  solve->add_option("--rho", cfg.rho, "Elite quantile");
  solve->add_option("--smooth", cfg.smooth, "Smoothing weight w");
  solve->add_option("--alpha", cfg.alpha, "Confidence decay alpha");
  solve->add_option("--pb", cfg.confidence, "Target probability of keeping the best start");
  solve->add_option("--seed", cfg.seed, "Random seed");
  solve->add_option("--workers", cfg.workers, "Worker threads");
  solve->add_option("--backtrack", cfg.backtrack_threshold, "Backtracking threshold (0 = off)");
  solve->add_flag("--brute-override", cfg.brute_override, "Lift the exhaustive-search size guard");
  solve->add_option("--scenario", scenario, "Scenario JSON, or @file");
  solve->add_flag("--weighted-lambda", weighted, "Blend interest and tightness by lambda");
  solve->add_flag("--directed", directed, "Read the edge list as directed");
  solve->add_flag("--normalize", normalize, "Min-max normalise scores to [0,1]");
  solve->add_option("--export-lp", export_lp, "Write the integer program in LP format");
  solve->add_flag("--lp-literal-a7", literal_a7, "Export path-edge rows as p <= 2(x_m + x_n)");
  solve->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment sweep");
  std::string spec_path;
  bench->add_option("--spec", spec_path, "Experiment spec JSON")->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic scored graph");
  waso::synth::SynthSpec sspec;
  std::string topology = "ba", prefix;
  synth_cmd->add_option("--nodes", sspec.nodes, "Node count")->required();
  synth_cmd->add_option("--topology", topology, "ba|er")->check(CLI::IsMember({"ba", "er"}));
  synth_cmd->add_option("--beta", sspec.beta, "Power-law exponent of interest scores");
  synth_cmd->add_option("--seed", sspec.seed, "Random seed");
  synth_cmd->add_option("--attach", sspec.attach, "Edges per new node (ba)");
  synth_cmd->add_option("--avg-degree", sspec.avg_degree, "Expected degree (er)");
  synth_cmd->add_option("--floor", sspec.tau_floor, "Tightness of edges without common neighbours");
  synth_cmd->add_option("--out", prefix, "Writes PREFIX.edges and PREFIX.scores")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the JSON session service");
  int port = 8080;
  std::string host = "127.0.0.1", state_dir;
  serve->add_option("--port", port, "Port");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--state-dir", state_dir, "Directory for session snapshots");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      waso::io::LoadOptions opts;
      opts.directed = directed;
      opts.normalize = normalize;
      const waso::SocialGraph graph = waso::io::load_graph(graph_path, scores_path, opts);
      cfg.algorithm = waso::parse_algorithm(algo);
      cfg.mode = weighted ? waso::WeightMode::LambdaWeighted : waso::WeightMode::Unweighted;

      waso::scenario::Prepared prepared;
      if (!scenario.empty()) {
        prepared = waso::scenario::apply_scenario(
            graph, waso::scenario::parse_scenario(read_text(scenario)), cfg.mode);
      } else {
        prepared.graph = graph;
        prepared.mode = cfg.mode;
      }
      if (!export_lp.empty()) {
        waso::ilp::IlpOptions lp;
        if (literal_a7) lp.path_edges = waso::ilp::PathEdgeBound::PaperLiteral;
        const auto model = waso::ilp::export_ilp(prepared.graph, cfg.k, lp);
        std::ofstream out(export_lp);
        if (!out) throw waso::Error(waso::ErrorCode::NotFound, "cannot write " + export_lp);
        waso::ilp::write_lp(out, model);
      }
      const auto outcome = waso::scenario::solve_prepared(prepared, cfg);
      for (const auto& w : outcome.report.warnings) std::cerr << "warning: " << w << '\n';
      if (format == "csv") {
        waso::write_solution_csv(std::cout, prepared.graph, outcome.solution, prepared.mode);
      } else {
        std::cout << waso::solution_json(prepared.graph, outcome, prepared.mode) << '\n';
      }
    } else if (*bench) {
      const auto spec = waso::experiment::load_spec(spec_path);
      const auto rows = waso::experiment::run_experiment(spec);
      if (spec.output.empty()) waso::experiment::write_rows(std::cout, rows, spec.timing);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.status != "ok";
      if (failed) std::cerr << failed << " of " << rows.size() << " runs failed\n";
    } else if (*synth_cmd) {
      sspec.topology = waso::synth::parse_topology(topology);
      const auto graph = waso::synth::synthesize(sspec);
      std::ofstream edges(prefix + ".edges"), scores(prefix + ".scores");
      if (!edges || !scores) {
        throw waso::Error(waso::ErrorCode::NotFound, "cannot write files under " + prefix);
      }
      waso::io::write_edges(edges, graph);
      waso::io::write_scores(scores, graph);
      std::cerr << graph.size() << " nodes, " << graph.num_directed_edges() / 2
                << " edges\n";
    } else if (*serve) {
      waso::service::SessionStore store(state_dir);
      std::cerr << "listening on " << host << ':' << port << '\n';
      waso::service::serve(store, host, port);
    }
  } catch (const waso::Error& e) {
    std::cerr << "error: " << waso::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
