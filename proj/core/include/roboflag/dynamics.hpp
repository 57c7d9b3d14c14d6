#pragma once

#include <array>
#include <optional>

#include "roboflag/geometry.hpp"

namespace roboflag {

// Planar vehicle under the damped, input-bounded drive model
//   xdd + xd = ux,  ydd + yd = uy,  ux^2 + uy^2 <= 1.
// All quantities are nondimensional field units.
struct DefenderState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;

  Vec2 pos() const { return {x, y}; }
  Vec2 vel() const { return {vx, vy}; }
};

struct ControlInput {
  double ux = 0.0;
  double uy = 0.0;
};

inline constexpr double kControlNormTol = 1e-9;

// Straight-line attacker with a two-state (active/inactive) mode. While
// active it moves at constant velocity from (p, q); once deactivated the
// position is frozen and the mode never returns to active.
struct AttackerTrack {
  double p = 0.0;
  double q = 0.0;
  double vp = 0.0;
  double vq = 0.0;
  bool active = true;
  std::optional<double> t_deactivated;

  Vec2 initial_pos() const { return {p, q}; }
  Vec2 velocity() const { return {vp, vq}; }
};

enum class DeactivationReason { kIntercepted, kEnteredZone };

// Sampling of the attacker clock: sample_count samples at sample_time
// spacing. Motion itself is evaluated in continuous time; the grid sets the
// granularity used by event scans.
struct SampleGrid {
  double sample_time = 0.5;
  int sample_count = 1000;
};

// Physical parameters of the three-motor omni-directional drive. Only the
// control-restriction checks are exposed; the heading dynamics are decoupled
// and not simulated.
struct OmniDriveParams {
  double mass = 1.0;
  double inertia = 1.0;
  double arm_length = 1.0;
  double u_theta = 0.0;
};

void validate(const OmniDriveParams& params);
void validate(const SampleGrid& grid);

// Exact propagation of the linear drive model over dt under constant input:
//   v' = u + (v - u) e^{-dt},  x' = x + u dt + (v - u)(1 - e^{-dt}).
// Throws std::invalid_argument on non-finite input, dt <= 0, or an input
// outside the unit disk (with kControlNormTol slack).
DefenderState step_defender(const DefenderState& s, const ControlInput& u,
                            double dt);

// Attacker position at time t >= 0: piecewise linear while active, frozen at
// the deactivation point afterwards.
Vec2 attacker_position_at(const AttackerTrack& a, const SampleGrid& grid,
                          double t);

// Absorbing mode switch. Throws std::invalid_argument if already inactive.
AttackerTrack deactivate(const AttackerTrack& a, double t,
                         DeactivationReason reason);

// Generalized force produced by motor voltages U through the drive matrix
// P(theta). Rows: body-frame force x, force y, torque sum.
std::array<double, 3> motor_matrix_apply(double theta,
                                         const std::array<double, 3>& voltages);

// Membership in the heading-independent admissible control set:
//   ux^2 + uy^2 <= ((3 - |ut|)/2)^2  and  |ut| <= 3.
bool restricted_control_ok(const std::array<double, 3>& u);

}  // namespace roboflag
