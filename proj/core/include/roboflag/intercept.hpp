#pragma once

#include <limits>
#include <optional>

#include "roboflag/dynamics.hpp"

namespace roboflag {

struct FieldConfig {
  double defense_zone_radius = 2.0;
};

void validate(const FieldConfig& field);

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

// Per-axis control bound used by the intercept primitive: the box
// [-1/sqrt2, 1/sqrt2]^2 inscribed in the unit control disk, so every
// per-axis plan is admissible for the true disk constraint.
inline constexpr double kAxisControlBound = 0.70710678118654752440;

// Bisection width for the rendezvous refinement.
inline constexpr double kInterceptTimeTol = 1e-4;

// Outcome of a minimum-time intercept query. delta_t is infinite when the
// attacker cannot be reached strictly before it enters the Defense Zone;
// the intercept point is present exactly when delta_t is finite.
struct InterceptResult {
  double delta_t = kInfiniteTime;
  std::optional<Vec2> point;

  bool feasible() const { return delta_t < kInfiniteTime; }
};

// One-axis minimum-time solution for xdd + xd = u, |u| <= u_max, steering
// (rel_pos, rel_vel) to the origin at rest. Bang-bang with a single switch.
struct MinTimeAxisPlan {
  double total_time = 0.0;
  double switch_time = 0.0;   // duration of the first control phase
  double first_control = 0.0; // signed control applied before the switch
};

// Earliest t >= 0 at which the (active) attacker's straight-line path meets
// the closed Defense Zone disk, or kInfiniteTime if it never does.
double zone_entry_time(const AttackerTrack& a, const FieldConfig& field);

// Minimum time to bring the scalar system xdd + xd = u, |u| <= u_max from
// (rel_pos, rel_vel) to the origin with zero final velocity. Always finite.
double min_time_to_point_1d(double rel_pos, double rel_vel, double u_max);

// Same computation, exposing the bang-bang plan for trajectory generation.
MinTimeAxisPlan min_time_axis_plan(double rel_pos, double rel_vel,
                                   double u_max);

// True iff the defender can be at `target` with zero velocity within tau,
// using the per-axis bound kAxisControlBound. Monotone in tau: a defender
// that has arrived holds rest with zero input.
bool reachable_at(const DefenderState& s, const Vec2& target, double tau);

// Minimum-time intercept of a moving attacker: the smallest tau such that
// the defender reaches the attacker's position at t0 + tau, at rest, with
// t0 + tau strictly before the attacker enters the Defense Zone. Found by a
// coarse scan at grid.sample_time / 4 followed by bisection to
// kInterceptTimeTol. Throws std::invalid_argument if the attacker is
// inactive.
InterceptResult int_time(const DefenderState& d, const AttackerTrack& a,
                         double t0, const FieldConfig& field,
                         const SampleGrid& grid);

}  // namespace roboflag
