#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "waso/allocation.hpp"
#include "waso/config.hpp"
#include "waso/graph.hpp"
#include "waso/sampling.hpp"

namespace waso {

/// What a solver asks for when it needs one sample.
struct SampleRequest {
  NodeId start{0};
  std::span<const NodeId> seed;  // initial partial solution (contains start)
  std::size_t k{0};
  std::size_t stage{0};          // 1-based
  std::size_t index{0};          // sample index within (start, stage)
  ExpansionRule rule{ExpansionRule::Uniform};
  std::span<const double> p;     // empty unless rule == Weighted
  std::uint64_t seed_value{0};
};

/// Produces samples for the staged solvers. The default draws from the
/// index-keyed RNG stream; tests substitute scripted traces. Implementations
/// must be safe to call concurrently.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual SampleVector draw(Expander& expander,
                            const SampleRequest& request) const;
};

struct StageRecord {
  std::size_t stage{0};
  std::vector<NodeId> starts;            // in start-selection order
  std::vector<std::size_t> allocation;   // samples per start this stage
  std::vector<double> worst;             // c_i after the stage
  std::vector<double> best;              // d_i after the stage
  std::vector<SelectionProbabilityVector> selection;  // CBAS-ND only
  std::vector<double> gamma;                          // CBAS-ND only
  double best_so_far{0.0};
};

struct RunReport {
  std::vector<NodeId> starts;
  std::size_t stages{0};
  std::size_t samples{0};
  std::size_t backtracks{0};
  std::vector<StageRecord> stage_log;
  std::vector<std::string> warnings;
};

struct SolveOutcome {
  Solution solution;
  RunReport report;
};

struct SolverHooks {
  const SampleSource* source{nullptr};
  std::function<void(const StageRecord&)> on_stage;
};

/// Deterministic greedy: highest-eta feasible start, then the frontier node
/// with the largest willingness increment, ties to the lower id.
SolveOutcome dgreedy(const SocialGraph& graph, const SolverConfig& config);

/// m starts, T/m samples each, next node drawn with probability
/// proportional to W({v} u S).
SolveOutcome rgreedy(const SocialGraph& graph, const SolverConfig& config,
                     const SolverHooks& hooks = {});

/// Staged sampling with budget allocation across start nodes.
SolveOutcome cbas(const SocialGraph& graph, const SolverConfig& config,
                  const SolverHooks& hooks = {});

/// cbas plus per-start cross-entropy selection probabilities. Uses the
/// Gaussian allocation when config.distribution is Gaussian.
SolveOutcome cbas_nd(const SocialGraph& graph, const SolverConfig& config,
                     const SolverHooks& hooks = {});

/// Re-plans after RSVP answers: declined nodes leave the graph and every
/// sample grows from the confirmed set. Returned ids refer to `graph`.
SolveOutcome online_replan(const SocialGraph& graph, const Solution& previous,
                           std::span<const NodeId> confirmed,
                           std::span<const NodeId> declined,
                           const SolverConfig& config,
                           const SolverHooks& hooks = {});

/// Dispatches on config.algorithm.
SolveOutcome solve(const SocialGraph& graph, const SolverConfig& config,
                   const SolverHooks& hooks = {});

/// Runs fn(worker, i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace waso
