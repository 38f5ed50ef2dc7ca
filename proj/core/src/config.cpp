#include "waso/config.hpp"

#include <algorithm>
#include <string>

namespace waso {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::DGreedy: return "dgreedy";
    case Algorithm::RGreedy: return "rgreedy";
    case Algorithm::Cbas: return "cbas";
    case Algorithm::CbasNd: return "cbas-nd";
    case Algorithm::CbasNdGaussian: return "cbas-nd-g";
    case Algorithm::Brute: return "brute";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view tag) {
  for (Algorithm a : {Algorithm::DGreedy, Algorithm::RGreedy, Algorithm::Cbas,
                      Algorithm::CbasNd, Algorithm::CbasNdGaussian,
                      Algorithm::Brute}) {
    if (to_string(a) == tag) return a;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown algorithm '" + std::string(tag) + "'");
}

void validate(const SolverConfig& c, std::size_t n) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, what);
  };
  if (c.k < 1) fail("k must be >= 1");
  if (c.k > n) {
    fail("k=" + std::to_string(c.k) + " exceeds the number of nodes (" +
         std::to_string(n) + ")");
  }
  if (c.budget < 1) fail("budget T must be >= 1");
  if (c.starts > n) fail("start count m must not exceed n");
  if (!(c.rho > 0.0 && c.rho < 1.0)) fail("rho must lie in (0,1)");
  if (!(c.smooth >= 0.0 && c.smooth <= 1.0)) fail("smoothing w must lie in [0,1]");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha must lie in (0,1)");
  if (!(c.confidence > 0.0 && c.confidence < 1.0)) {
    fail("confidence P_b must lie in (0,1)");
  }
  if (!(c.backtrack_threshold >= 0.0)) fail("backtrack threshold must be >= 0");
  if (c.workers < 1) fail("workers must be >= 1");
}

std::size_t effective_starts(const SolverConfig& config, std::size_t n) {
  if (config.starts != 0) return std::min(config.starts, n);
  const std::size_t k = std::max<std::size_t>(config.k, 1);
  return std::clamp<std::size_t>((n + k - 1) / k, 1, std::max<std::size_t>(n, 1));
}

}  // namespace waso
