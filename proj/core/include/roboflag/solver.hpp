#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "roboflag/assignment.hpp"
#include "roboflag/oracle.hpp"
#include "roboflag/search_order.hpp"

namespace roboflag {

inline constexpr std::uint64_t kUnboundedBranches = UINT64_MAX;

struct SolverConfig {
  Strategy strategy = Strategy::kAstarBfs;
  std::uint64_t k_max = kUnboundedBranches;  // explored-branch budget, >= 1
  std::optional<double> time_budget_ms;      // wall-clock budget
  double epsilon = 0.01;
  bool enable_pruning = true;
  // Early exit once the incumbent reaches this cost. Used by the decision
  // problem with threshold 0, where the cost is bounded below by 0 and the
  // stop therefore certifies optimality.
  std::optional<double> stop_cost_threshold;
};

void validate(const SolverConfig& config);

struct SolverResult {
  EvaluatedAssignment best;
  double j_ub_best = 0.0;
  std::uint64_t branches_explored = 0;
  bool proven_optimal = false;
  // (k, incumbent) at every strict improvement; starts with the greedy root.
  std::vector<std::pair<std::uint64_t, double>> ub_trace;
  std::uint64_t pruned = 0;
  std::uint64_t expanded = 0;

  // Incumbent cost after k explored branches (step function over ub_trace).
  double incumbent_after(std::uint64_t k) const;
};

// Test hooks: an alternative sibling-ordering bound for the A* strategies
// and an observer invoked at every explored node with its bounds.
struct SolverHooks {
  std::function<double(const EvaluatedAssignment&)> bound_fn;
  std::function<void(const EvaluatedAssignment&, double j_lb, double j_ub)>
      on_node;
};

// Greedy completion of a partial assignment: repeatedly commit the
// (defender, attacker) pair with the smallest completed-intercept time
// c(d,a) = t_d(m_d) + dt_int(d, a, t_d(m_d)); when every remaining pair is
// infeasible the leftover attackers are marked as entering and appended to
// the last defender. Returns the evaluated complete assignment; its cost is
// the upper bound.
EvaluatedAssignment upper_bound(const EvaluatedAssignment& node,
                                const InstanceSpec& inst,
                                const InterceptOracle& oracle, double epsilon);

// Simultaneity relaxation: every unassigned attacker is pursued directly
// from each defender's end-of-sequence state, all at once. The bound is
//   sum of gammas + epsilon * max(best finite c(d,a), completion times).
// Exact (no relaxation) when nothing is unassigned.
double lower_bound(const EvaluatedAssignment& node, const InstanceSpec& inst,
                   const InterceptOracle& oracle, double epsilon);

// Anytime branch and bound: greedy incumbent at the root, then
// strategy-ordered exploration with upper-bound incumbent updates and
// lower-bound pruning. Stops on exhaustion (proven optimal) or on the
// branch/time budget with the best assignment found so far.
SolverResult solve(const InstanceSpec& inst, const SolverConfig& config,
                   const SolverHooks& hooks = {});

}  // namespace roboflag
