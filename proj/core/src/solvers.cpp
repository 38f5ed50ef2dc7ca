#include "waso/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "waso/cross_entropy.hpp"
#include "waso/oracle.hpp"

namespace waso {

SampleVector SampleSource::draw(Expander& expander,
                                const SampleRequest& req) const {
  RngStream rng(req.seed_value, req.start, req.stage, req.index);
  return expander.grow(req.seed, req.k, req.rule, rng, req.p);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(0, i);
    return;
  }
  constexpr std::size_t kChunk = 8;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          const std::size_t end = std::min(count, begin + kChunk);
          for (std::size_t i = begin; i < end; ++i) fn(w, i);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

const SampleSource& default_source() {
  static const SampleSource source;
  return source;
}

struct SeedGroup {
  NodeId start{0};
  std::vector<NodeId> seed;
};

/// Per-worker expanders, created on first use.
class ExpanderPool {
 public:
  ExpanderPool(const SocialGraph& graph, WeightMode mode, std::size_t workers)
      : graph_(&graph), mode_(mode), slots_(workers) {}

  Expander& get(std::size_t worker) {
    auto& slot = slots_.at(worker);
    if (!slot) slot.emplace(*graph_, mode_);
    return *slot;
  }

 private:
  const SocialGraph* graph_;
  WeightMode mode_;
  std::vector<std::optional<Expander>> slots_;
};

struct GlobalBest {
  std::optional<SampleVector> sample;

  void offer(const SampleVector& s) {
    if (!sample || better_group(s.willingness, s.members, sample->willingness,
                                sample->members)) {
      sample = s;
    }
  }
};

/// Feasible starts among the top-m; infeasible ones produce a warning.
std::vector<SeedGroup> feasible_starts(const SocialGraph& graph,
                                       const SolverConfig& config,
                                       RunReport& report) {
  const std::size_t m = effective_starts(config, graph.size());
  std::vector<SeedGroup> groups;
  for (NodeId s : select_start_nodes(graph, m)) {
    if (graph.component_size(s) < config.k) {
      report.warnings.push_back("start node " + graph.label(s) +
                                " skipped: its component has fewer than k nodes");
      continue;
    }
    groups.push_back({s, {s}});
  }
  if (groups.empty()) {
    throw Error(ErrorCode::Infeasible,
                "no start node lies in a component with at least k nodes");
  }
  return groups;
}

/// Equal split with the remainder going to the lowest-id starts.
std::vector<std::size_t> even_split(std::span<const SeedGroup> groups,
                                    std::size_t total) {
  const std::size_t m = groups.size();
  std::vector<std::size_t> out(m, total / m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].start < groups[b].start;
  });
  for (std::size_t i = 0; i < total % m; ++i) ++out[order[i]];
  return out;
}

SolveOutcome run_staged(const SocialGraph& graph, const SolverConfig& config,
                        std::vector<SeedGroup> groups, bool cross_entropy,
                        const SolverHooks& hooks, RunReport report) {
  const std::size_t n = graph.size();
  const std::size_t k = config.k;
  const std::size_t m = groups.size();
  const std::size_t budget = config.budget;
  const SampleSource& source = hooks.source ? *hooks.source : default_source();

  std::size_t stages =
      config.stages != 0
          ? config.stages
          : stage_count(budget, m, config.confidence, config.alpha, k, n);
  if (budget < m) {
    report.warnings.push_back(
        "budget T is smaller than the start count; running a single uniform stage");
    stages = 1;
  }
  stages = std::clamp<std::size_t>(stages, 1, budget);
  report.stages = stages;
  for (const auto& g : groups) report.starts.push_back(g.start);

  std::vector<StartNodeStats> stats(m);
  for (std::size_t i = 0; i < m; ++i) {
    stats[i].start = groups[i].start;
    if (cross_entropy) {
      stats[i].p = init_selection_probability(n, groups[i].start, k);
      for (NodeId v : groups[i].seed) stats[i].p[v] = 1.0;
    }
  }

  const std::size_t per_stage = budget / stages;
  ExpanderPool pool(graph, config.mode, config.workers);
  GlobalBest global;
  const ExpansionRule rule =
      cross_entropy ? ExpansionRule::Weighted : ExpansionRule::Uniform;

  for (std::size_t t = 1; t <= stages; ++t) {
    const std::size_t stage_budget =
        t == stages ? budget - per_stage * (stages - 1) : per_stage;

    std::vector<std::size_t> alloc;
    if (t == 1) {
      alloc = even_split(groups, stage_budget);
      for (std::size_t i = 0; i < m; ++i) {
        if (alloc[i] == 0) stats[i].pruned = true;
      }
    } else if (config.distribution == Distribution::Gaussian) {
      alloc = allocate_budget_gaussian(stats, stage_budget);
    } else {
      alloc = allocate_budget(stats, stage_budget);
    }

    // flatten (start, sample) jobs
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) offset[i + 1] = offset[i] + alloc[i];
    const std::size_t jobs = offset[m];
    std::vector<SampleVector> results(jobs);
    parallel_for(jobs, config.workers, [&](std::size_t worker, std::size_t job) {
      const auto i = static_cast<std::size_t>(
          std::upper_bound(offset.begin(), offset.end(), job) - offset.begin() -
          1);
      SampleRequest req;
      req.start = groups[i].start;
      req.seed = groups[i].seed;
      req.k = k;
      req.stage = t;
      req.index = job - offset[i];
      req.rule = rule;
      if (cross_entropy) req.p = stats[i].p;
      req.seed_value = config.seed;
      results[job] = source.draw(pool.get(worker), req);
    });
    report.samples += jobs;

    StageRecord record;
    record.stage = t;
    record.allocation = alloc;
    for (std::size_t i = 0; i < m; ++i) {
      std::span<const SampleVector> batch(results.data() + offset[i], alloc[i]);
      for (const auto& s : batch) {
        stats[i].record(s);
        global.offer(s);
      }
      if (cross_entropy && !batch.empty()) {
        const auto update = update_selection_probability(
            batch, config.rho, stats[i].gamma, stats[i].p);
        stats[i].gamma = update.gamma;
        if (update.elite > 0) {
          auto next = smooth(update.p, stats[i].p, config.smooth);
          if (config.backtrack_threshold > 0.0 &&
              backtrack_check(next, stats[i].p, config.backtrack_threshold)) {
            ++report.backtracks;  // keep the previous vector and resample
          } else {
            stats[i].p = std::move(next);
          }
        }
      }
      record.starts.push_back(stats[i].start);
      record.worst.push_back(stats[i].worst);
      record.best.push_back(stats[i].best);
      if (cross_entropy) {
        record.selection.push_back(stats[i].p);
        record.gamma.push_back(stats[i].gamma);
      }
    }
    record.best_so_far = global.sample ? global.sample->willingness : 0.0;
    if (hooks.on_stage) hooks.on_stage(record);
    report.stage_log.push_back(std::move(record));
  }

  if (!global.sample) {
    throw Error(ErrorCode::Infeasible, "no sample was drawn");
  }
  SolveOutcome out;
  out.solution = make_solution(graph, global.sample->members, config.mode);
  out.report = std::move(report);
  return out;
}

}  // namespace

SolveOutcome dgreedy(const SocialGraph& graph, const SolverConfig& config) {
  validate(config, graph.size());
  const std::size_t n = graph.size();
  const std::size_t k = config.k;
  const bool weighted = config.mode == WeightMode::LambdaWeighted;

  std::optional<NodeId> start;
  for (NodeId v = 0; v < n; ++v) {
    if (graph.component_size(v) < k) continue;
    if (!start || graph.node(v).eta > graph.node(*start).eta) start = v;
  }
  if (!start) {
    throw Error(ErrorCode::Infeasible, "no component has at least k nodes");
  }

  auto own = [&](NodeId v) {
    const auto& r = graph.node(v);
    return weighted ? r.lambda * r.eta : r.eta;
  };
  std::vector<std::uint8_t> inside(n, 0), on_frontier(n, 0);
  std::vector<double> gain(n, 0.0);
  std::vector<NodeId> members, front;
  auto add = [&](NodeId v) {
    inside[v] = 1;
    members.push_back(v);
    const double keep_v = weighted ? 1.0 - graph.node(v).lambda : 1.0;
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (inside[nb.id]) continue;
      if (!on_frontier[nb.id]) {
        on_frontier[nb.id] = 1;
        front.push_back(nb.id);
        gain[nb.id] = own(nb.id);
      }
      const double keep_u = weighted ? 1.0 - graph.node(nb.id).lambda : 1.0;
      gain[nb.id] += keep_u * nb.in + keep_v * nb.out;
    }
  };
  add(*start);
  while (members.size() < k) {
    std::optional<NodeId> pick;
    for (NodeId u : front) {
      if (inside[u]) continue;
      if (!pick || gain[u] > gain[*pick] ||
          (gain[u] == gain[*pick] && u < *pick)) {
        pick = u;
      }
    }
    add(*pick);  // feasible component guarantees a frontier node
  }
  SolveOutcome out;
  out.solution = make_solution(graph, members, config.mode);
  out.report.starts = {*start};
  out.report.samples = 1;
  return out;
}

SolveOutcome rgreedy(const SocialGraph& graph, const SolverConfig& config,
                     const SolverHooks& hooks) {
  validate(config, graph.size());
  RunReport report;
  auto groups = feasible_starts(graph, config, report);
  const SampleSource& source = hooks.source ? *hooks.source : default_source();
  const auto alloc = even_split(groups, config.budget);

  std::vector<std::size_t> offset(groups.size() + 1, 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    offset[i + 1] = offset[i] + alloc[i];
  }
  std::vector<SampleVector> results(offset.back());
  ExpanderPool pool(graph, config.mode, config.workers);
  parallel_for(results.size(), config.workers,
               [&](std::size_t worker, std::size_t job) {
                 const auto i = static_cast<std::size_t>(
                     std::upper_bound(offset.begin(), offset.end(), job) -
                     offset.begin() - 1);
                 SampleRequest req;
                 req.start = groups[i].start;
                 req.seed = groups[i].seed;
                 req.k = config.k;
                 req.stage = 1;
                 req.index = job - offset[i];
                 req.rule = ExpansionRule::Greedy;
                 req.seed_value = config.seed;
                 results[job] = source.draw(pool.get(worker), req);
               });
  GlobalBest global;
  for (const auto& s : results) global.offer(s);
  for (const auto& g : groups) report.starts.push_back(g.start);
  report.samples = results.size();
  report.stages = 1;
  if (!global.sample) throw Error(ErrorCode::Infeasible, "no sample was drawn");
  SolveOutcome out;
  out.solution = make_solution(graph, global.sample->members, config.mode);
  out.report = std::move(report);
  return out;
}

SolveOutcome cbas(const SocialGraph& graph, const SolverConfig& config,
                  const SolverHooks& hooks) {
  validate(config, graph.size());
  RunReport report;
  auto groups = feasible_starts(graph, config, report);
  SolverConfig uniform = config;
  uniform.distribution = Distribution::Uniform;
  return run_staged(graph, uniform, std::move(groups), false, hooks,
                    std::move(report));
}

SolveOutcome cbas_nd(const SocialGraph& graph, const SolverConfig& config,
                     const SolverHooks& hooks) {
  validate(config, graph.size());
  RunReport report;
  auto groups = feasible_starts(graph, config, report);
  return run_staged(graph, config, std::move(groups), true, hooks,
                    std::move(report));
}

SolveOutcome online_replan(const SocialGraph& graph, const Solution& previous,
                           std::span<const NodeId> confirmed,
                           std::span<const NodeId> declined,
                           const SolverConfig& config,
                           const SolverHooks& hooks) {
  validate(config, graph.size());
  const std::size_t n = graph.size();
  std::vector<std::uint8_t> is_declined(n, 0);
  for (NodeId v : declined) {
    if (v >= n) throw Error(ErrorCode::InvalidMember, "declined node is not in the graph");
    is_declined[v] = 1;
  }
  std::vector<NodeId> keep_confirmed(confirmed.begin(), confirmed.end());
  std::sort(keep_confirmed.begin(), keep_confirmed.end());
  keep_confirmed.erase(std::unique(keep_confirmed.begin(), keep_confirmed.end()),
                       keep_confirmed.end());
  for (NodeId v : keep_confirmed) {
    if (v >= n) throw Error(ErrorCode::InvalidMember, "confirmed node is not in the graph");
    if (!std::binary_search(previous.members.begin(), previous.members.end(), v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "confirmed node " + graph.label(v) + " is not in the previous group");
    }
    if (is_declined[v]) {
      throw Error(ErrorCode::InvalidArgument,
                  "node " + graph.label(v) + " is both confirmed and declined");
    }
  }
  if (keep_confirmed.size() > config.k) {
    throw Error(ErrorCode::InvalidArgument, "more confirmed attendees than k");
  }
  if (!keep_confirmed.empty() && !is_connected(graph, keep_confirmed)) {
    throw Error(ErrorCode::InvalidArgument,
                "confirmed attendees do not form a connected group");
  }

  const bool any_member_declined = std::any_of(
      previous.members.begin(), previous.members.end(),
      [&](NodeId v) { return is_declined[v]; });
  if (!any_member_declined && keep_confirmed == previous.members) {
    SolveOutcome out;
    out.solution = make_solution(graph, previous.members, config.mode);
    return out;
  }

  std::vector<NodeId> keep;
  for (NodeId v = 0; v < n; ++v) {
    if (!is_declined[v]) keep.push_back(v);
  }
  std::vector<NodeId> to_reduced;
  const SocialGraph reduced = induced_subgraph(graph, keep, &to_reduced);
  if (reduced.size() < config.k) {
    throw Error(ErrorCode::Infeasible, "fewer than k nodes remain after declines");
  }

  SolveOutcome inner;
  if (keep_confirmed.empty()) {
    inner = cbas_nd(reduced, config, hooks);
  } else {
    SeedGroup group;
    for (NodeId v : keep_confirmed) group.seed.push_back(to_reduced[v]);
    group.start = group.seed.front();
    if (reduced.component_size(group.start) < config.k) {
      throw Error(ErrorCode::Infeasible,
                  "confirmed attendees can no longer reach k connected nodes");
    }
    if (group.seed.size() == config.k) {
      inner.solution = make_solution(reduced, group.seed, config.mode);
    } else {
      inner = run_staged(reduced, config, {group}, true, hooks, RunReport{});
    }
  }

  std::vector<NodeId> members;
  for (NodeId v : inner.solution.members) members.push_back(keep[v]);
  SolveOutcome out;
  out.solution = make_solution(graph, std::move(members), config.mode);
  out.report = std::move(inner.report);
  for (auto& s : out.report.starts) s = keep[s];
  return out;
}

SolveOutcome solve(const SocialGraph& graph, const SolverConfig& config,
                   const SolverHooks& hooks) {
  switch (config.algorithm) {
    case Algorithm::DGreedy: return dgreedy(graph, config);
    case Algorithm::RGreedy: return rgreedy(graph, config, hooks);
    case Algorithm::Cbas: return cbas(graph, config, hooks);
    case Algorithm::CbasNd: return cbas_nd(graph, config, hooks);
    case Algorithm::CbasNdGaussian: {
      SolverConfig c = config;
      c.distribution = Distribution::Gaussian;
      return cbas_nd(graph, c, hooks);
    }
    case Algorithm::Brute: {
      validate(config, graph.size());
      oracle::BruteForceOptions opts;
      opts.mode = config.mode;
      opts.override_guard = config.brute_override;
      SolveOutcome out;
      out.solution = oracle::brute_force(graph, config.k, opts);
      return out;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

}  // namespace waso
