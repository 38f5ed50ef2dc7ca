#include "waso/allocation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <queue>

namespace waso {

void StartNodeStats::record(const SampleVector& s) {
  if (samples == 0) {
    worst = best = s.willingness;
    best_sample = s;
  } else {
    worst = std::min(worst, s.willingness);
    if (better_group(s.willingness, s.members, best, best_sample->members)) {
      best = s.willingness;
      best_sample = s;
    }
  }
  ++samples;
  sum += s.willingness;
  sum_sq += s.willingness * s.willingness;
}

double StartNodeStats::mean() const {
  return samples == 0 ? 0.0 : sum / static_cast<double>(samples);
}

double StartNodeStats::stddev() const {
  constexpr double kFloor = 1e-9;
  if (samples < 2) return kFloor;
  const double n = static_cast<double>(samples);
  const double var = (sum_sq - sum * sum / n) / (n - 1.0);
  return std::max(kFloor, std::sqrt(std::max(0.0, var)));
}

std::vector<NodeId> select_start_nodes(const SocialGraph& graph,
                                       std::size_t m) {
  const std::size_t n = graph.size();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::InvalidArgument,
                "start count m must lie in [1, n]");
  }
  using Entry = std::pair<double, NodeId>;
  // max by mass, then min by id
  auto lower_priority = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::vector<Entry> heap;
  heap.reserve(n);
  for (NodeId v = 0; v < n; ++v) heap.emplace_back(node_mass(graph, v), v);
  std::make_heap(heap.begin(), heap.end(), lower_priority);
  std::vector<NodeId> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::pop_heap(heap.begin(), heap.end(), lower_priority);
    out.push_back(heap.back().second);
    heap.pop_back();
  }
  return out;
}

std::size_t stage_count(std::size_t budget, std::size_t /*m*/,
                        double confidence, double alpha, std::size_t k,
                        std::size_t n, std::size_t fallback) {
  if (k == 0 || n == 0) return fallback;
  const double groups = static_cast<double>(n) / static_cast<double>(k);
  if (!(groups > 1.0)) return fallback;
  const double inner = 2.0 * (1.0 - confidence) / (groups - 1.0);
  if (!(inner > 0.0 && inner < 1.0)) return fallback;
  if (!(alpha > 0.0 && alpha <= 1.0)) return fallback;
  const double bound = static_cast<double>(budget) * static_cast<double>(k) *
                       std::log(alpha) /
                       (static_cast<double>(n) * std::log(inner));
  const double r = std::floor(bound);
  return r < 1.0 ? 1 : static_cast<std::size_t>(r);
}

std::size_t best_start_index(std::span<const StartNodeStats> stats) {
  std::size_t best = stats.size();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    if (s.pruned || s.samples == 0) continue;
    if (best == stats.size() || s.best > stats[best].best ||
        (s.best == stats[best].best && s.start < stats[best].start)) {
      best = i;
    }
  }
  if (best == stats.size()) {
    throw Error(ErrorCode::Infeasible, "no sampled start node to allocate to");
  }
  return best;
}

std::vector<std::size_t> apportion(std::span<const double> weights,
                                   std::size_t total, std::size_t fallback) {
  std::vector<std::size_t> out(weights.size(), 0);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) {
    out.at(fallback) = total;
    return out;
  }
  std::vector<double> frac(weights.size(), 0.0);
  std::size_t given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / sum * static_cast<double>(total);
    const double fl = std::floor(exact);
    out[i] = static_cast<std::size_t>(fl);
    frac[i] = exact - fl;
    given += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frac[a] > frac[b];
  });
  for (std::size_t i = 0; given < total; ++i, ++given) {
    ++out[order[i % order.size()]];
  }
  return out;
}

namespace {

// Order of stats by node id, so rounding ties favour lower ids.
std::vector<std::size_t> id_order(std::span<const StartNodeStats> stats) {
  std::vector<std::size_t> order(stats.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return stats[a].start < stats[b].start;
  });
  return order;
}

std::vector<std::size_t> finish_allocation(std::span<StartNodeStats> stats,
                                           const std::vector<double>& weights,
                                           std::size_t b,
                                           std::size_t stage_budget) {
  const auto order = id_order(stats);
  std::vector<double> ordered(weights.size());
  std::size_t fallback = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    ordered[i] = weights[order[i]];
    if (order[i] == b) fallback = i;
  }
  const auto shares = apportion(ordered, stage_budget, fallback);
  std::vector<std::size_t> out(stats.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = shares[i];
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (out[i] == 0) stats[i].pruned = true;
  }
  return out;
}

}  // namespace

std::vector<std::size_t> allocate_budget(std::span<StartNodeStats> stats,
                                         std::size_t stage_budget) {
  const std::size_t b = best_start_index(stats);
  const double c_b = stats[b].worst;
  const double d_b = stats[b].best;
  const double n_b = static_cast<double>(stats[b].samples);

  std::vector<double> weights(stats.size(), 0.0);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    if (s.pruned) continue;
    if (s.samples == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "every unpruned start needs at least one sample");
    }
    if (d_b == c_b) {
      weights[i] = 1.0;
    } else if (s.best > c_b) {
      weights[i] = std::pow((s.best - c_b) / (d_b - c_b), n_b);
    }
  }
  return finish_allocation(stats, weights, b, stage_budget);
}

std::vector<std::size_t> allocate_budget_gaussian(
    std::span<StartNodeStats> stats, std::size_t stage_budget) {
  const std::size_t b = best_start_index(stats);
  const auto& sb = stats[b];
  std::vector<double> weights(stats.size(), 0.0);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    if (s.pruned) continue;
    if (s.samples == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "every unpruned start needs at least one sample");
    }
    weights[i] = gaussian_exceed_probability(sb.mean(), sb.stddev(),
                                             sb.samples, s.mean(), s.stddev(),
                                             s.samples);
  }
  return finish_allocation(stats, weights, b, stage_budget);
}

double gaussian_exceed_probability(double mu_b, double sigma_b,
                                   std::size_t n_b, double mu_i,
                                   double sigma_i, std::size_t n_i) {
  if (!(sigma_b > 0.0) || !(sigma_i > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  }
  if (n_b < 1 || n_i < 1) {
    throw Error(ErrorCode::InvalidArgument, "sample counts must be >= 1");
  }
  const double nb = static_cast<double>(n_b);
  const double ni = static_cast<double>(n_i);
  auto log_cdf = [](double z) {
    return std::log(0.5 * std::erfc(-z / std::sqrt(2.0)));
  };
  auto integrand = [&](double x) {
    const double zb = (x - mu_b) / sigma_b;
    const double zi = (x - mu_i) / sigma_i;
    const double log_pdf = -0.5 * zb * zb - 0.5 * std::log(2.0 * M_PI);
    const double lf = (nb - 1.0) * log_cdf(zb) + log_pdf + ni * log_cdf(zi);
    if (!std::isfinite(lf)) return 0.0;
    return nb * std::exp(lf) / sigma_b;
  };

  const double widen = std::sqrt(2.0 * std::log(std::max(2.0, nb)));
  const double lo = mu_b - 10.0 * sigma_b;
  const double hi = mu_b + (10.0 + widen) * sigma_b;

  // split where the other factor switches on, so its step is resolved
  std::vector<double> cuts{lo, hi};
  for (double c : {mu_i - 8.0 * sigma_i, mu_i, mu_i + 8.0 * sigma_i}) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());

  using boost::math::quadrature::gauss_kronrod;
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    mass += gauss_kronrod<double, 61>::integrate(integrand, cuts[i],
                                                 cuts[i + 1], 20, 1e-12);
  }
  return std::clamp(1.0 - mass, 0.0, 1.0);
}

double best_start_confidence(std::size_t m, double alpha, std::size_t budget,
                             std::size_t stages) {
  const double exponent = static_cast<double>(budget) /
                          (static_cast<double>(m) * static_cast<double>(stages));
  return 1.0 - 0.5 * (static_cast<double>(m) - 1.0) * std::pow(alpha, exponent);
}

double best_start_budget(std::size_t m, std::size_t stages,
                         std::size_t budget) {
  const double mm = static_cast<double>(m);
  const double r = static_cast<double>(stages);
  return (4.0 + mm * (r - 1.0)) / (4.0 * r * mm) * static_cast<double>(budget);
}

double quality_ratio_bound(double best_budget) {
  const double nb = best_budget;
  return nb * std::pow(1.0 / (nb + 1.0), (nb + 1.0) / nb);
}

}  // namespace waso
