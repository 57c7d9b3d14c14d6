#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the solver-side code paths it is used to check:
// trajectories are integrated numerically or searched on dense grids, the
// greedy completion is re-coded from scratch, and optima come from
// exhaustive enumeration.

#include <cstdint>
#include <functional>
#include <vector>

#include "roboflag/assignment.hpp"
#include "roboflag/generator.hpp"
#include "roboflag/oracle.hpp"
#include "roboflag/solver.hpp"

namespace oracles {

using namespace roboflag;

// Fixed-step RK4 integration of xdd + xd = u per axis.
DefenderState rk4_defender(const DefenderState& s, const ControlInput& u,
                           double duration, int steps);

// Minimum time to rest at the origin via a dense grid over bang-bang switch
// times (both first-control signs), with linear interpolation of the
// final-position zero crossing. ds is the grid resolution.
double grid_min_time_1d(double x0, double v0, double u_max, double ds);

// First feasible rendezvous time on a dense tau grid, or infinity. Feasible
// means both axis minimum times fit within tau and tau stays strictly
// before the attacker's zone entry.
double scan_int_time(const DefenderState& d, const AttackerTrack& a,
                     double t0, const FieldConfig& field, double resolution);

// Step-by-step transcription of the greedy completion, recomputing the full
// cost matrix from scratch every round.
struct GreedyOutcome {
  std::vector<std::vector<int>> sequences;  // per defender, 1-based attackers
  double j_ub = 0.0;
};
GreedyOutcome greedy_reference(const EvaluatedAssignment& node,
                               const InstanceSpec& inst,
                               const InterceptOracle& oracle, double epsilon);

// Exhaustive minimum over all canonical leaves below `from`.
double min_leaf_cost(const InstanceSpec& inst, const InterceptOracle& oracle,
                     double epsilon, const Assignment& from);

// Exhaustive minimum over every completion of the node's partial
// assignment, appending remaining attackers to any defender in any order
// (a superset of the canonical subtree below the node).
double min_extension_cost(const InstanceSpec& inst,
                          const InterceptOracle& oracle, double epsilon,
                          const EvaluatedAssignment& node);

// Count of distinct leaves reached by exhaustive expansion.
std::uint64_t count_leaves_by_expansion(int n, int m,
                                        bool check_child_counts);

}  // namespace oracles
