#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "waso/config.hpp"
#include "waso/graph.hpp"
#include "waso/synth.hpp"

namespace waso::experiment {

enum class Axis { K, Budget, Starts, Rho, Smooth };

/// Sweep description, read from JSON:
///   {"graph": {"edges": "...", "scores": "..."} | "synthetic": {nodes,
///    topology, beta, seed, attach, avg_degree, tau_floor},
///    "axis": "k"|"T"|"m"|"rho"|"w", "values": [...],
///    "repetitions": 3, "seed": 1 | "seeds": [...],
///    "solvers": ["dgreedy", "cbas-nd"], "config": {...},
///    "output": "rows.csv", "summary": "summary.csv", "timing": true,
///    "workers": 1}
/// Relative paths resolve against the spec file's directory.
struct ExperimentSpec {
  std::filesystem::path edges;
  std::filesystem::path scores;
  std::optional<synth::SynthSpec> synthetic;
  Axis axis{Axis::K};
  std::vector<double> values;
  std::size_t repetitions{1};
  std::vector<std::uint64_t> seeds;  // one per repetition
  std::vector<Algorithm> solvers;
  SolverConfig base;
  std::filesystem::path output;
  std::filesystem::path summary;
  bool timing{true};
  std::size_t workers{1};  // concurrent repetitions
};

std::string_view to_string(Axis axis) noexcept;

ExperimentSpec parse_spec(const std::string& json_text,
                          const std::filesystem::path& base_dir = {});
ExperimentSpec load_spec(const std::filesystem::path& path);

struct Row {
  double axis_value{0.0};
  Algorithm solver{Algorithm::DGreedy};
  std::size_t rep{0};
  std::uint64_t seed{0};
  double willingness{0.0};
  double time_ms{0.0};
  std::size_t samples{0};
  std::string status;  // "ok" or the error code
};

/// Runs every axis value x solver x repetition. Rows come back ordered by
/// (axis index, solver index, repetition) whatever the worker count.
/// Solver errors are recorded in the row and the sweep continues.
std::vector<Row> run_experiment(const ExperimentSpec& spec, const SocialGraph& graph);

/// Loads or synthesizes the graph, runs, and writes the CSV files named in
/// the spec. Returns the rows.
std::vector<Row> run_experiment(const ExperimentSpec& spec);

/// Header: axis,solver,rep,seed,willingness,time_ms,samples,status.
/// time_ms is written as 0 when timing is off.
void write_rows(std::ostream& out, const std::vector<Row>& rows, bool timing);

/// Per (axis value, solver): count of ok rows, mean and sample stdev of
/// willingness, time_ms and samples.
void write_summary(std::ostream& out, const std::vector<Row>& rows, bool timing);

}  // namespace waso::experiment
