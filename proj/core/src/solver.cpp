#include "roboflag/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roboflag {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kBfs: return "bfs";
    case Strategy::kDfs: return "dfs";
    case Strategy::kAstarBfs: return "astar-bfs";
    case Strategy::kAstarDfs: return "astar-dfs";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "bfs") return Strategy::kBfs;
  if (name == "dfs") return Strategy::kDfs;
  if (name == "astar-bfs") return Strategy::kAstarBfs;
  if (name == "astar-dfs") return Strategy::kAstarDfs;
  return std::nullopt;
}

void validate(const SolverConfig& config) {
  if (config.k_max < 1) {
    throw std::invalid_argument("solver: k_max must be >= 1");
  }
  if (!(config.epsilon >= 0.0)) {
    throw std::invalid_argument("solver: epsilon must be >= 0");
  }
}

double SolverResult::incumbent_after(std::uint64_t k) const {
  double value = std::numeric_limits<double>::infinity();
  for (const auto& [at, cost] : ub_trace) {
    if (at > k) break;
    value = cost;
  }
  return value;
}

namespace {

struct GreedyState {
  std::vector<DefenderState> states;
  std::vector<double> times;
  std::vector<std::vector<int>> seqs;
};

double completed_intercept_time(const InterceptOracle& oracle,
                                const DefenderState& state, double t,
                                int attacker0) {
  const InterceptResult r = oracle.query(state, attacker0, t);
  return r.feasible() ? t + r.delta_t : kInfiniteTime;
}

}  // namespace

EvaluatedAssignment upper_bound(const EvaluatedAssignment& node,
                                const InstanceSpec& inst,
                                const InterceptOracle& oracle,
                                double epsilon) {
  const int n = inst.n();
  const int m = inst.m();

  std::vector<int> unassigned;
  for (int b = 1; b <= m; ++b) {
    if (node.gamma[b - 1] == -1) unassigned.push_back(b);
  }
  if (unassigned.empty()) return node;

  GreedyState g{node.end_states, node.completion_times,
                to_sequences(node.assignment, n)};

  // c(d, a) for the still-unassigned attackers; refreshed row-wise as the
  // chosen defender's sequence grows.
  std::vector<std::vector<double>> c(n, std::vector<double>(unassigned.size()));
  for (int d = 0; d < n; ++d) {
    for (std::size_t j = 0; j < unassigned.size(); ++j) {
      c[d][j] = completed_intercept_time(oracle, g.states[d], g.times[d],
                                         unassigned[j] - 1);
    }
  }

  std::vector<bool> done(unassigned.size(), false);
  std::size_t remaining = unassigned.size();
  while (remaining > 0) {
    int best_d = -1;
    std::size_t best_j = 0;
    double best_c = kInfiniteTime;
    for (int d = 0; d < n; ++d) {
      for (std::size_t j = 0; j < unassigned.size(); ++j) {
        if (done[j]) continue;
        if (c[d][j] < best_c) {
          best_c = c[d][j];
          best_d = d;
          best_j = j;
        }
      }
    }
    if (best_d < 0) break;  // every remaining pair is infeasible

    const int attacker = unassigned[best_j];
    const InterceptResult r =
        oracle.query(g.states[best_d], attacker - 1, g.times[best_d]);
    g.times[best_d] = best_c;
    g.states[best_d] = DefenderState{r.point->x, r.point->y, 0.0, 0.0};
    g.seqs[best_d].push_back(attacker);
    done[best_j] = true;
    --remaining;
    for (std::size_t j = 0; j < unassigned.size(); ++j) {
      if (done[j]) continue;
      c[best_d][j] = completed_intercept_time(
          oracle, g.states[best_d], g.times[best_d], unassigned[j] - 1);
    }
  }

  // Leftover attackers cannot be intercepted from anywhere; park them on the
  // last defender, where re-evaluation reproduces the infinite queries.
  for (std::size_t j = 0; j < unassigned.size(); ++j) {
    if (!done[j]) g.seqs[n - 1].push_back(unassigned[j]);
  }

  return evaluate(from_sequences(g.seqs, m), inst, oracle, epsilon);
}

double lower_bound(const EvaluatedAssignment& node, const InstanceSpec& inst,
                   const InterceptOracle& oracle, double epsilon) {
  const int n = inst.n();
  const int m = inst.m();

  double gamma_sum = 0.0;
  for (int b = 0; b < m; ++b) {
    if (node.gamma[b] == 1) gamma_sum += 1.0;
  }
  double time_term = 0.0;
  for (const double t : node.completion_times) {
    time_term = std::max(time_term, t);
  }

  for (int b = 1; b <= m; ++b) {
    if (node.gamma[b - 1] != -1) continue;
    double best = kInfiniteTime;
    for (int d = 0; d < n; ++d) {
      best = std::min(best, completed_intercept_time(
                                oracle, node.end_states[d],
                                node.completion_times[d], b - 1));
    }
    if (best < kInfiniteTime) {
      time_term = std::max(time_term, best);
    } else {
      gamma_sum += 1.0;
    }
  }
  return gamma_sum + epsilon * time_term;
}

SolverResult solve(const InstanceSpec& inst, const SolverConfig& config,
                   const SolverHooks& hooks) {
  validate(inst);
  validate(config);
  if (inst.n() < 1) {
    throw std::invalid_argument("solve: need at least one defender");
  }
  const auto t_start = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    if (!config.time_budget_ms) return false;
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - t_start);
    return elapsed.count() >= *config.time_budget_ms;
  };

  const InterceptOracle oracle(inst);
  const double eps = config.epsilon;

  struct Node {
    Assignment assignment;
    double bound = 0.0;
  };

  SolverResult result;
  const EvaluatedAssignment root =
      evaluate(Assignment::empty(inst.m()), inst, oracle, eps);
  result.best = upper_bound(root, inst, oracle, eps);
  result.j_ub_best = result.best.cost;
  result.branches_explored = 1;
  result.ub_trace.push_back({1, result.j_ub_best});

  const bool reached_stop = config.stop_cost_threshold &&
                            result.j_ub_best <= *config.stop_cost_threshold;
  if (root.assignment.complete() || reached_stop) {
    result.proven_optimal =
        root.assignment.complete() ||
        (reached_stop && *config.stop_cost_threshold <= 0.0);
    return result;
  }

  const bool astar = config.strategy == Strategy::kAstarBfs ||
                     config.strategy == Strategy::kAstarDfs;
  OpenList<Node> open(config.strategy);
  auto push_children = [&](const EvaluatedAssignment& parent) {
    std::vector<Assignment> children = expand_node(parent.assignment, inst.n());
    std::vector<std::pair<Node, double>> items;
    items.reserve(children.size());
    for (auto& child : children) {
      double bound = 0.0;
      if (astar) {
        const EvaluatedAssignment child_eval =
            evaluate(child, inst, oracle, eps);
        bound = hooks.bound_fn
                    ? hooks.bound_fn(child_eval)
                    : upper_bound(child_eval, inst, oracle, eps).cost;
      }
      items.push_back({Node{std::move(child), bound}, bound});
    }
    open.push_siblings(std::move(items));
    ++result.expanded;
  };

  push_children(root);

  bool budget_stop = false;
  while (!open.empty()) {
    if (result.branches_explored >= config.k_max || out_of_time()) {
      budget_stop = true;
      break;
    }
    const Node node = *open.pop();
    ++result.branches_explored;

    const EvaluatedAssignment node_eval =
        evaluate(node.assignment, inst, oracle, eps);
    const EvaluatedAssignment completion =
        upper_bound(node_eval, inst, oracle, eps);
    if (completion.cost < result.j_ub_best) {
      result.j_ub_best = completion.cost;
      result.best = completion;
      result.ub_trace.push_back({result.branches_explored, result.j_ub_best});
      if (config.stop_cost_threshold &&
          result.j_ub_best <= *config.stop_cost_threshold) {
        result.proven_optimal = *config.stop_cost_threshold <= 0.0;
        return result;
      }
    }

    const double j_lb = lower_bound(node_eval, inst, oracle, eps);
    if (hooks.on_node) hooks.on_node(node_eval, j_lb, completion.cost);

    if (config.enable_pruning && j_lb >= result.j_ub_best) {
      ++result.pruned;
      continue;
    }
    if (!node.assignment.complete()) {
      push_children(node_eval);
    }
  }

  result.proven_optimal = !budget_stop && open.empty();
  return result;
}

}  // namespace roboflag
