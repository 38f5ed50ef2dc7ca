#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "waso/graph.hpp"
#include "waso/sampling.hpp"

namespace waso {

/// Sampling record of one start node across stages.
struct StartNodeStats {
  NodeId start{0};
  std::size_t samples{0};  // cumulative N_i
  double worst{0.0};       // c_i
  double best{0.0};        // d_i
  std::optional<SampleVector> best_sample;
  bool pruned{false};

  // running moments for the Gaussian allocation variant
  double sum{0.0};
  double sum_sq{0.0};

  // cross-entropy state (CBAS-ND only)
  SelectionProbabilityVector p;
  double gamma{-std::numeric_limits<double>::infinity()};

  void record(const SampleVector& s);
  double mean() const;
  /// Bessel-corrected standard deviation with a 1e-9 floor.
  double stddev() const;
};

/// Top-m nodes by eta_i plus incident tightness (both directions), ties to
/// the lower id. Heap-based: O(E + n + m log n).
std::vector<NodeId> select_start_nodes(const SocialGraph& graph,
                                       std::size_t m);

/// Stage count from the confidence bound
///   r <= T k ln(alpha) / (n ln(2(1-P_b)/(n/k - 1))),
/// floored and clamped to >= 1; `fallback` when the bound is vacuous.
std::size_t stage_count(std::size_t budget, std::size_t m, double confidence,
                        double alpha, std::size_t k, std::size_t n,
                        std::size_t fallback = 2);

/// Index (into `stats`) of the unpruned start with the largest best value,
/// ties to the lower node id. Requires at least one sampled, unpruned start.
std::size_t best_start_index(std::span<const StartNodeStats> stats);

/// Splits `stage_budget` across unpruned starts in proportion to
/// ((d_i - c_b)/(d_b - c_b))^N_b, clamped at zero for d_i <= c_b, using
/// largest-remainder rounding. Starts that receive nothing are marked pruned.
/// When d_b == c_b the split is uniform over unpruned starts.
std::vector<std::size_t> allocate_budget(std::span<StartNodeStats> stats,
                                         std::size_t stage_budget);

/// Same, with the Gaussian exceed probability as the weight of each start.
std::vector<std::size_t> allocate_budget_gaussian(
    std::span<StartNodeStats> stats, std::size_t stage_budget);

/// Largest-remainder rounding of non-negative weights to integers summing to
/// `total`; remainder ties go to the lower index. All-zero weights give
/// everything to `fallback`.
std::vector<std::size_t> apportion(std::span<const double> weights,
                                   std::size_t total, std::size_t fallback);

/// P(J_b* <= J_i*) where J* is the maximum of N normal draws:
///   1 - N_b \int Phi(z_b)^(N_b-1) phi(z_b) Phi(z_i)^N_i dx / sigma_b.
/// Adaptive Gauss-Kronrod over mu_b +- 10 sigma_b (widened for large N_b).
double gaussian_exceed_probability(double mu_b, double sigma_b,
                                   std::size_t n_b, double mu_i,
                                   double sigma_i, std::size_t n_i);

/// Lower bound on P_b after r stages: 1 - (m-1)/2 * alpha^(T/(m r)).
double best_start_confidence(std::size_t m, double alpha, std::size_t budget,
                             std::size_t stages);

/// Budget held by the best start after r stages: (4 + m(r-1))/(4 r m) * T.
double best_start_budget(std::size_t m, std::size_t stages, std::size_t budget);

/// Expected-quality ratio N_b (1/(N_b+1))^((N_b+1)/N_b).
double quality_ratio_bound(double best_budget);

}  // namespace waso
