#include "waso/cross_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace waso {

SelectionProbabilityVector init_selection_probability(std::size_t n,
                                                      NodeId start,
                                                      std::size_t k) {
  if (start >= n) {
    throw Error(ErrorCode::InvalidMember, "start node is out of range");
  }
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [1, n]");
  }
  const double base =
      n > 1 ? static_cast<double>(k - 1) / static_cast<double>(n - 1) : 0.0;
  SelectionProbabilityVector p(n, base);
  p[start] = 1.0;
  return p;
}

SelectionUpdate update_selection_probability(
    std::span<const SampleVector> samples, double rho, double gamma_prev,
    std::span<const double> previous) {
  if (samples.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no samples to update from");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "rho must lie in (0,1)");
  }
  std::vector<double> sorted;
  sorted.reserve(samples.size());
  for (const auto& s : samples) sorted.push_back(s.willingness);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  auto rank = static_cast<std::size_t>(
      std::ceil(rho * static_cast<double>(samples.size())));
  rank = std::clamp<std::size_t>(rank, 1, samples.size());

  SelectionUpdate out;
  out.gamma = std::max(gamma_prev, sorted[rank - 1]);

  std::vector<double> counts(previous.size(), 0.0);
  for (const auto& s : samples) {
    if (s.willingness < out.gamma) continue;
    ++out.elite;
    for (NodeId v : s.members) {
      if (v >= counts.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "sample member outside the probability vector");
      }
      counts[v] += 1.0;
    }
  }
  if (out.elite == 0) {
    out.p.assign(previous.begin(), previous.end());
    return out;
  }
  for (double& c : counts) c /= static_cast<double>(out.elite);
  out.p = std::move(counts);
  return out;
}

SelectionProbabilityVector smooth(std::span<const double> p_new,
                                  std::span<const double> p_old, double w) {
  if (p_new.size() != p_old.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "probability vectors differ in length");
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "smoothing weight must be in [0,1]");
  }
  SelectionProbabilityVector out(p_new.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = w * p_new[j] + (1.0 - w) * p_old[j];
  }
  return out;
}

double selection_change(std::span<const double> current,
                        std::span<const double> previous) {
  if (current.size() != previous.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "probability vectors differ in length");
  }
  double z = 0.0;
  for (std::size_t j = 0; j < current.size(); ++j) {
    const double d = current[j] - previous[j];
    z += d * d;
  }
  return z;
}

bool backtrack_check(std::span<const double> current,
                     std::span<const double> previous, double threshold) {
  return selection_change(current, previous) < threshold;
}

}  // namespace waso
