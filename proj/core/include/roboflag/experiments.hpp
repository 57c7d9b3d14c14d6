#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "roboflag/generator.hpp"
#include "roboflag/solver.hpp"

namespace roboflag {

// One instance solved inside a study. wall_ms is informational only; branch
// counts are the machine-independent cost measure.
struct InstanceRun {
  std::uint64_t seed = 0;
  bool solved = false;
  double j_opt = 0.0;
  std::uint64_t branches_to_converge = 0;
  std::uint64_t branches_to_prove = 0;
  double wall_ms = 0.0;
  std::vector<std::pair<std::uint64_t, double>> ub_trace;
};

struct StudyConfig {
  GenParams gen;  // counts, ranges, and the base seed of the instance stream
  double epsilon = 0.01;
  int count = 100;
  Strategy strategy = Strategy::kAstarBfs;
  std::uint64_t k_max = kUnboundedBranches;
  std::optional<double> time_budget_ms;
  int threads = 1;
};

// Deterministic per-instance seed for index i of a study stream.
std::uint64_t study_seed(std::uint64_t base_seed, std::uint64_t index);

// Solve `count` random instances to proven optimality or budget. Results are
// ordered by instance index regardless of thread scheduling.
std::vector<InstanceRun> run_complexity_study(const StudyConfig& cfg);

// Fraction of instances proven optimal within k branches, evaluated at each
// distinct solved branch count: a nondecreasing empirical CDF.
std::vector<std::pair<std::uint64_t, double>> solved_fraction_curve(
    const std::vector<InstanceRun>& runs);

// PD(k) = 100 (mean_ub(k) - mean_opt) / mean_opt, pointwise over k.
// Throws std::domain_error when mean_opt is zero.
std::vector<double> percent_difference(const std::vector<double>& mean_ub,
                                       double mean_opt);

struct ConvergenceStats {
  std::vector<double> mean_ub;  // index k-1 holds the mean incumbent after k
  double mean_opt = 0.0;
  std::vector<double> pd;
  std::vector<std::uint64_t> branches_to_converge;  // per solved instance
  std::vector<std::uint64_t> branches_to_prove;
  int instances_used = 0;
  int excluded = 0;  // not proven optimal within budget
};

// Convergence of the incumbent with explored branches, averaged over solved
// instances; unsolved instances are excluded and counted.
ConvergenceStats run_convergence_study(const StudyConfig& cfg, int k_limit);

enum class RddVerdict { kYes, kNo, kUnknown };

struct RddResult {
  RddVerdict verdict = RddVerdict::kUnknown;
  std::uint64_t branches = 0;
};

// Decision problem: does some complete assignment keep every attacker out of
// the Defense Zone? Solved with epsilon = 0; an incumbent of zero certifies
// yes immediately, a root relaxation of at least one certifies no.
RddResult rdd_decide(const InstanceSpec& inst, std::uint64_t k_max_budget);

enum class PhaseAxis { kVelocityRatio, kTeamRatio };

struct PhasePoint {
  double control = 0.0;  // vA/vD or n/m
  double fraction_yes = 0.0;
  double mean_branches = 0.0;
  int instances = 0;
  int yes = 0;
  int no = 0;
  int unknown = 0;
};

struct PhaseConfig {
  PhaseAxis axis = PhaseAxis::kVelocityRatio;
  std::vector<double> grid;
  int per_point = 100;
  GenParams base;
  std::uint64_t k_max = 20000;
  int threads = 1;
};

// Sweep the control parameter and decide per-point batches of random
// instances. Velocity sweeps scale the attacker speed against the defender
// speed ceiling; team sweeps fix both speeds at 1 and vary the defender
// count against the base attacker count.
std::vector<PhasePoint> run_phase_transition(const PhaseConfig& cfg);

// Evenly spaced sweep grid, inclusive of both ends.
std::vector<double> linear_grid(double from, double to, int points);

}  // namespace roboflag
