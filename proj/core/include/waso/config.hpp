#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "waso/graph.hpp"

namespace waso {

enum class Algorithm { DGreedy, RGreedy, Cbas, CbasNd, CbasNdGaussian, Brute };
enum class Distribution { Uniform, Gaussian };

std::string_view to_string(Algorithm a) noexcept;
/// Accepts the CLI tags: dgreedy, rgreedy, cbas, cbas-nd, cbas-nd-g, brute.
Algorithm parse_algorithm(std::string_view tag);

struct SolverConfig {
  std::size_t k{5};
  std::size_t budget{1000};  // T, total samples
  std::size_t starts{0};     // m; 0 = ceil(n/k)
  std::size_t stages{0};     // r; 0 = from stage_count()
  double rho{0.3};
  double smooth{0.9};        // w
  double alpha{0.99};
  double confidence{0.7};    // P_b
  std::uint64_t seed{1};
  Algorithm algorithm{Algorithm::CbasNd};
  Distribution distribution{Distribution::Uniform};
  double backtrack_threshold{0.0};  // z_t; 0 disables backtracking
  WeightMode mode{WeightMode::Unweighted};
  std::size_t workers{1};
  bool brute_override{false};  // lift the brute-force scale guard
};

/// Throws InvalidArgument when a field is out of range for a graph of n nodes.
void validate(const SolverConfig& config, std::size_t n);

/// Start count after defaulting: ceil(n/k) clamped to [1, n].
std::size_t effective_starts(const SolverConfig& config, std::size_t n);

}  // namespace waso
