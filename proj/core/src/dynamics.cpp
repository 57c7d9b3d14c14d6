#include "roboflag/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace roboflag {

namespace {

bool all_finite(const DefenderState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.vx) &&
         std::isfinite(s.vy);
}

}  // namespace

void validate(const OmniDriveParams& params) {
  if (!(params.mass > 0.0) || !(params.inertia > 0.0) ||
      !(params.arm_length > 0.0)) {
    throw std::invalid_argument("omni-drive parameters must be positive");
  }
  if (!(std::abs(params.u_theta) <= 3.0)) {
    throw std::invalid_argument("|u_theta| must not exceed 3");
  }
}

void validate(const SampleGrid& grid) {
  if (!(grid.sample_time > 0.0)) {
    throw std::invalid_argument("sample_time must be positive");
  }
  if (grid.sample_count < 1) {
    throw std::invalid_argument("sample_count must be at least 1");
  }
}

DefenderState step_defender(const DefenderState& s, const ControlInput& u,
                            double dt) {
  if (!all_finite(s) || !std::isfinite(u.ux) || !std::isfinite(u.uy) ||
      !std::isfinite(dt)) {
    throw std::invalid_argument("step_defender: non-finite input");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_defender: dt must be positive");
  }
  if (u.ux * u.ux + u.uy * u.uy > 1.0 + kControlNormTol) {
    throw std::invalid_argument("step_defender: control outside unit disk");
  }
  const double decay = std::exp(-dt);
  const double ramp = 1.0 - decay;
  DefenderState out;
  out.vx = u.ux + (s.vx - u.ux) * decay;
  out.vy = u.uy + (s.vy - u.uy) * decay;
  out.x = s.x + u.ux * dt + (s.vx - u.ux) * ramp;
  out.y = s.y + u.uy * dt + (s.vy - u.uy) * ramp;
  return out;
}

Vec2 attacker_position_at(const AttackerTrack& a, const SampleGrid& grid,
                          double t) {
  validate(grid);
  if (!(t >= 0.0)) {
    throw std::invalid_argument("attacker_position_at: t must be >= 0");
  }
  double t_eff = t;
  if (!a.active && a.t_deactivated) {
    t_eff = std::min(t, *a.t_deactivated);
  }
  return {a.p + a.vp * t_eff, a.q + a.vq * t_eff};
}

AttackerTrack deactivate(const AttackerTrack& a, double t,
                         DeactivationReason /*reason*/) {
  if (!a.active) {
    throw std::invalid_argument("deactivate: attacker already inactive");
  }
  AttackerTrack out = a;
  out.active = false;
  out.t_deactivated = t;
  return out;
}

std::array<double, 3> motor_matrix_apply(
    double theta, const std::array<double, 3>& voltages) {
  constexpr double kThird = M_PI / 3.0;
  const double row0[3] = {-std::sin(theta), -std::sin(kThird - theta),
                          std::sin(kThird + theta)};
  const double row1[3] = {std::cos(theta), -std::cos(kThird - theta),
                          -std::cos(kThird + theta)};
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    out[0] += row0[i] * voltages[i];
    out[1] += row1[i] * voltages[i];
    out[2] += voltages[i];
  }
  return out;
}

bool restricted_control_ok(const std::array<double, 3>& u) {
  const double ut = std::abs(u[2]);
  if (ut > 3.0) return false;
  const double radius = (3.0 - ut) / 2.0;
  return u[0] * u[0] + u[1] * u[1] <= radius * radius;
}

}  // namespace roboflag
