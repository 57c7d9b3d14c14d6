#include "roboflag/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace roboflag {

namespace {

void check_range(const Range& r, const char* name) {
  if (!(r.lo > 0.0) || !(r.lo <= r.hi)) {
    throw std::invalid_argument(std::string("generator: bad range for ") +
                                name);
  }
}

}  // namespace

void validate(const GenParams& params) {
  if (params.defenders < 1) {
    throw std::invalid_argument("generator: need at least one defender");
  }
  if (params.attackers < 0) {
    throw std::invalid_argument("generator: attacker count must be >= 0");
  }
  check_range(params.attacker_radius, "attacker_radius");
  check_range(params.attacker_speed, "attacker_speed");
  check_range(params.defender_radius, "defender_radius");
  check_range(params.defender_speed, "defender_speed");
  if (!(params.defense_zone_radius > 0.0)) {
    throw std::invalid_argument("generator: defense_zone_radius must be > 0");
  }
  if (!(params.attacker_radius.lo > params.defense_zone_radius)) {
    throw std::invalid_argument(
        "generator: attackers must start outside the Defense Zone");
  }
  if (!(params.epsilon >= 0.0)) {
    throw std::invalid_argument("generator: epsilon must be >= 0");
  }
  if (!(params.sample_time > 0.0) || params.sample_count < 1) {
    throw std::invalid_argument("generator: bad sample grid");
  }
}

InstanceSpec generate(const GenParams& params) {
  validate(params);
  SplitMix64 rng(params.seed);

  InstanceSpec inst;
  inst.field.defense_zone_radius = params.defense_zone_radius;
  inst.grid = SampleGrid{params.sample_time, params.sample_count};
  inst.epsilon = params.epsilon;

  inst.defenders.reserve(params.defenders);
  for (int d = 0; d < params.defenders; ++d) {
    const double r = rng.uniform(params.defender_radius.lo,
                                 params.defender_radius.hi);
    const double theta = rng.angle();
    const double v = rng.uniform(params.defender_speed.lo,
                                 params.defender_speed.hi);
    const double phi = rng.angle();
    inst.defenders.push_back(DefenderState{r * std::cos(theta),
                                           r * std::sin(theta),
                                           v * std::cos(phi),
                                           v * std::sin(phi)});
  }

  inst.attackers.reserve(params.attackers);
  for (int a = 0; a < params.attackers; ++a) {
    const double r = rng.uniform(params.attacker_radius.lo,
                                 params.attacker_radius.hi);
    const double theta = rng.angle();
    const double v = rng.uniform(params.attacker_speed.lo,
                                 params.attacker_speed.hi);
    const double phi = rng.angle();
    AttackerTrack track;
    track.p = r * std::cos(theta);
    track.q = r * std::sin(theta);
    if (params.heading == AttackerHeading::kTowardOrigin) {
      track.vp = -v * std::cos(theta);
      track.vq = -v * std::sin(theta);
    } else {
      track.vp = v * std::cos(phi);
      track.vq = v * std::sin(phi);
    }
    inst.attackers.push_back(track);
  }
  return inst;
}

}  // namespace roboflag
