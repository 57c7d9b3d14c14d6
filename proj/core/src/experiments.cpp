#include "roboflag/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace roboflag {

namespace {

// Index-sharded worker pool; results land in caller-owned slots so the
// aggregate is independent of scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::uint64_t study_seed(std::uint64_t base_seed, std::uint64_t index) {
  SplitMix64 mix(base_seed);
  return mix.fork(index);
}

std::vector<InstanceRun> run_complexity_study(const StudyConfig& cfg) {
  if (cfg.count < 1) {
    throw std::invalid_argument("study: count must be >= 1");
  }
  std::vector<InstanceRun> runs(cfg.count);
  parallel_for(cfg.count, cfg.threads, [&](int i) {
    GenParams params = cfg.gen;
    params.seed = study_seed(cfg.gen.seed, i);
    params.epsilon = cfg.epsilon;
    const InstanceSpec inst = generate(params);

    SolverConfig sc;
    sc.strategy = cfg.strategy;
    sc.k_max = cfg.k_max;
    sc.time_budget_ms = cfg.time_budget_ms;
    sc.epsilon = cfg.epsilon;

    const auto t0 = std::chrono::steady_clock::now();
    const SolverResult res = solve(inst, sc);
    const auto t1 = std::chrono::steady_clock::now();

    InstanceRun& run = runs[i];
    run.seed = params.seed;
    run.solved = res.proven_optimal;
    run.j_opt = res.j_ub_best;
    run.branches_to_prove = res.branches_explored;
    run.branches_to_converge = res.ub_trace.back().first;
    run.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    run.ub_trace = res.ub_trace;
  });
  return runs;
}

std::vector<std::pair<std::uint64_t, double>> solved_fraction_curve(
    const std::vector<InstanceRun>& runs) {
  std::vector<std::uint64_t> solved_costs;
  for (const auto& r : runs) {
    if (r.solved) solved_costs.push_back(r.branches_to_prove);
  }
  std::sort(solved_costs.begin(), solved_costs.end());
  std::vector<std::pair<std::uint64_t, double>> curve;
  const double total = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < solved_costs.size(); ++i) {
    if (i + 1 < solved_costs.size() && solved_costs[i + 1] == solved_costs[i]) {
      continue;
    }
    curve.push_back({solved_costs[i], static_cast<double>(i + 1) / total});
  }
  return curve;
}

std::vector<double> percent_difference(const std::vector<double>& mean_ub,
                                       double mean_opt) {
  if (mean_opt == 0.0) {
    throw std::domain_error("percent_difference: mean optimal cost is zero");
  }
  std::vector<double> pd(mean_ub.size());
  for (std::size_t i = 0; i < mean_ub.size(); ++i) {
    pd[i] = 100.0 * (mean_ub[i] - mean_opt) / mean_opt;
  }
  return pd;
}

ConvergenceStats run_convergence_study(const StudyConfig& cfg, int k_limit) {
  if (k_limit < 1) {
    throw std::invalid_argument("study: k_limit must be >= 1");
  }
  const std::vector<InstanceRun> runs = run_complexity_study(cfg);

  ConvergenceStats stats;
  stats.mean_ub.assign(k_limit, 0.0);
  for (const auto& run : runs) {
    if (!run.solved) {
      ++stats.excluded;
      continue;
    }
    ++stats.instances_used;
    stats.mean_opt += run.j_opt;
    stats.branches_to_converge.push_back(run.branches_to_converge);
    stats.branches_to_prove.push_back(run.branches_to_prove);
    double incumbent = run.ub_trace.front().second;
    std::size_t cursor = 0;
    for (int k = 1; k <= k_limit; ++k) {
      while (cursor < run.ub_trace.size() &&
             run.ub_trace[cursor].first <= static_cast<std::uint64_t>(k)) {
        incumbent = run.ub_trace[cursor].second;
        ++cursor;
      }
      stats.mean_ub[k - 1] += incumbent;
    }
  }
  if (stats.instances_used == 0) {
    throw std::runtime_error("study: no instance solved within budget");
  }
  const double used = static_cast<double>(stats.instances_used);
  stats.mean_opt /= used;
  for (double& v : stats.mean_ub) v /= used;
  stats.pd = percent_difference(stats.mean_ub, stats.mean_opt);
  return stats;
}

RddResult rdd_decide(const InstanceSpec& inst, std::uint64_t k_max_budget) {
  validate(inst);
  if (inst.m() == 0) return {RddVerdict::kYes, 1};

  {
    // Root relaxation: if even simultaneous pursuit leaks an attacker, the
    // answer is no without any search.
    const InterceptOracle oracle(inst);
    const EvaluatedAssignment root =
        evaluate(Assignment::empty(inst.m()), inst, oracle, 0.0);
    if (lower_bound(root, inst, oracle, 0.0) >= 1.0) {
      return {RddVerdict::kNo, 1};
    }
  }

  SolverConfig sc;
  sc.strategy = Strategy::kAstarBfs;
  sc.k_max = k_max_budget;
  sc.epsilon = 0.0;
  sc.stop_cost_threshold = 0.0;
  const SolverResult res = solve(inst, sc);
  if (res.j_ub_best <= 0.0) return {RddVerdict::kYes, res.branches_explored};
  if (res.proven_optimal) return {RddVerdict::kNo, res.branches_explored};
  return {RddVerdict::kUnknown, res.branches_explored};
}

std::vector<double> linear_grid(double from, double to, int points) {
  if (points < 1) {
    throw std::invalid_argument("linear_grid: points must be >= 1");
  }
  std::vector<double> grid;
  grid.reserve(points);
  if (points == 1) {
    grid.push_back(from);
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid.push_back(from + (to - from) * static_cast<double>(i) /
                              static_cast<double>(points - 1));
  }
  return grid;
}

std::vector<PhasePoint> run_phase_transition(const PhaseConfig& cfg) {
  if (cfg.grid.empty()) {
    throw std::invalid_argument("phase: grid must be nonempty");
  }
  if (cfg.per_point < 1) {
    throw std::invalid_argument("phase: per_point must be >= 1");
  }
  std::vector<PhasePoint> points;
  points.reserve(cfg.grid.size());
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    const double ratio = cfg.grid[g];
    GenParams params = cfg.base;
    if (cfg.axis == PhaseAxis::kVelocityRatio) {
      const double va = ratio * cfg.base.defender_speed.hi;
      params.attacker_speed = {va, va};
    } else {
      params.defender_speed = {1.0, 1.0};
      params.attacker_speed = {1.0, 1.0};
      params.defenders = std::max(
          1, static_cast<int>(std::lround(ratio * cfg.base.attackers)));
    }

    std::vector<RddResult> results(cfg.per_point);
    parallel_for(cfg.per_point, cfg.threads, [&](int i) {
      GenParams p = params;
      p.seed = study_seed(cfg.base.seed ^ (0x9e3779b97f4a7c15ull * (g + 1)),
                          static_cast<std::uint64_t>(i));
      results[i] = rdd_decide(generate(p), cfg.k_max);
    });

    PhasePoint point;
    point.control = cfg.axis == PhaseAxis::kVelocityRatio
                        ? ratio
                        : static_cast<double>(params.defenders) /
                              static_cast<double>(params.attackers);
    point.instances = cfg.per_point;
    double branches = 0.0;
    for (const auto& r : results) {
      branches += static_cast<double>(r.branches);
      switch (r.verdict) {
        case RddVerdict::kYes: ++point.yes; break;
        case RddVerdict::kNo: ++point.no; break;
        case RddVerdict::kUnknown: ++point.unknown; break;
      }
    }
    point.fraction_yes =
        static_cast<double>(point.yes) / static_cast<double>(cfg.per_point);
    point.mean_branches = branches / static_cast<double>(cfg.per_point);
    points.push_back(point);
  }
  return points;
}

}  // namespace roboflag
