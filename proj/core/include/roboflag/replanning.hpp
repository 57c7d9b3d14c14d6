#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roboflag/instance.hpp"
#include "roboflag/search_order.hpp"

namespace roboflag {

// Closed-loop replanning rates are events per time unit; zero means the
// level plans once at t = 0 and never again. Planning levels are ordered:
// assignment slower than defender trajectories, attacker intelligence slower
// than attacker trajectory generation.
struct SimConfig {
  double rate_ta = 24.0 / 15.0;
  double rate_tc = 24.0;
  double rate_tg = 24.0;
  double rate_i = 2.4;
  double beta_enlarge = 3.5;     // defender radius inflation seen by attackers
  double defender_radius = 0.75;
  double intercept_radius = 0.5;
  double avoid_margin = 0.05;    // waypoint clearance beyond the inflated disc
  double t_end = 60.0;
  double base_dt = 0.025;
  Strategy solver_strategy = Strategy::kAstarBfs;
  std::uint64_t solver_k_max = 64;  // deterministic per-replan search budget
  double epsilon = 0.01;
};

void validate(const SimConfig& cfg);

// Piecewise-constant control plan; zero input after the last segment, which
// holds the vehicle at rest once the plan has finished.
struct ControlSegment {
  double duration = 0.0;
  ControlInput u;
};

struct ControlSchedule {
  std::vector<ControlSegment> segments;

  ControlInput control_at(double t_offset) const;
  double horizon() const;
};

// Minimum-time plan from the current state to rest at `destination`,
// per-axis bang-bang under the box bound. Attackers and defenders are the
// same vehicles, so both sides use this.
ControlSchedule attacker_trajectory(const DefenderState& vehicle,
                                    const Vec2& destination);

// Exact propagation along a schedule from time offset t0 for dt.
DefenderState follow_schedule(const DefenderState& s,
                              const ControlSchedule& schedule, double t0,
                              double dt);

// Reactive avoidance: head for the origin unless an inflated defender disc
// blocks the straight segment; then detour to a tangent waypoint of the
// nearest blocking disc, on the side with the shorter total path (ties go
// counterclockwise). A fully enclosed attacker stalls in place.
Vec2 attacker_intelligence(const Vec2& attacker_pos,
                           const std::vector<DefenderState>& defenders,
                           const SimConfig& cfg);

struct SimEvent {
  double t = 0.0;
  std::string type;  // assign | traj | destination | intercept | entry | end
  int defender = -1;
  int attacker = -1;
  std::string detail;
};

enum class AttackerStatus { kActive = 0, kEntered = 1, kIntercepted = 2 };

struct SimOutcome {
  int entered = 0;
  int intercepted = 0;
  int active_at_end = 0;
  double fraction_entered = 0.0;
  std::vector<SimEvent> events;
  std::vector<DefenderState> final_defenders;
  std::vector<DefenderState> final_attackers;
  std::vector<AttackerStatus> attacker_status;
  std::uint64_t ta_solves = 0;
  std::uint64_t solver_branches = 0;
};

// Fixed-step closed-loop game: defenders replan assignments at rate_ta and
// intercept trajectories at rate_tc against reactive attackers retargeting
// at rate_i and regenerating trajectories at rate_tg. The seed is recorded
// for provenance; the simulation itself is deterministic in (inst, cfg).
SimOutcome simulate(const InstanceSpec& inst, const SimConfig& cfg,
                    std::uint64_t seed);

}  // namespace roboflag
