#include "roboflag/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace roboflag {

void validate(const InstanceSpec& inst) {
  validate(inst.field);
  validate(inst.grid);
  if (!(inst.epsilon >= 0.0)) {
    throw std::invalid_argument("instance: epsilon must be >= 0");
  }
  for (const auto& d : inst.defenders) {
    if (!std::isfinite(d.x) || !std::isfinite(d.y) || !std::isfinite(d.vx) ||
        !std::isfinite(d.vy)) {
      throw std::invalid_argument("instance: non-finite defender state");
    }
  }
  for (const auto& a : inst.attackers) {
    if (!std::isfinite(a.p) || !std::isfinite(a.q) || !std::isfinite(a.vp) ||
        !std::isfinite(a.vq)) {
      throw std::invalid_argument("instance: non-finite attacker track");
    }
    if (!a.active) {
      throw std::invalid_argument("instance: attackers must start active");
    }
  }
}

}  // namespace roboflag
