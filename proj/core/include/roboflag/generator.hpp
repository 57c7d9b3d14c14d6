#pragma once

#include <cstdint>
#include <string>

#include "roboflag/instance.hpp"

namespace roboflag {

// Counter-based generator used for reproducible instance streams. The
// algorithm identifier below is written into output manifests so instances
// can be regenerated from (algorithm, seed) alone.
//
// splitmix64(state): state += 0x9e3779b97f4a7c15; z = state;
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
//   return z ^ (z >> 31).
// Doubles take the top 53 bits: u = next() >> 11, value = u * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
  }

  // Uniform on (0, 2*pi].
  double angle() { return (1.0 - uniform01()) * 6.283185307179586476925287; }

  // A decorrelated child seed for stream i.
  std::uint64_t fork(std::uint64_t i) {
    SplitMix64 mix(state_ ^ (0xd1342543de82ef95ull * (i + 1)));
    return mix.next();
  }

 private:
  std::uint64_t state_;
};

inline constexpr const char* kGeneratorAlgorithm = "splitmix64-u53-v1";

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

enum class AttackerHeading { kTowardOrigin, kUniformRandom };

// Randomized instance parameters. Defaults follow the reference experiment
// setup: attackers on an annulus [7.5, 15] at unit speed, defenders on
// [sqrt(2) R_dz, 2 sqrt(2) R_dz] with speed in [0.5, 1].
struct GenParams {
  int defenders = 3;
  int attackers = 5;
  Range attacker_radius{7.5, 15.0};
  Range attacker_speed{1.0, 1.0};
  Range defender_radius{2.8284271247461903, 5.656854249492381};
  Range defender_speed{0.5, 1.0};
  double defense_zone_radius = 2.0;
  AttackerHeading heading = AttackerHeading::kTowardOrigin;
  double epsilon = 0.01;
  double sample_time = 0.5;
  int sample_count = 1000;
  std::uint64_t seed = 0;
};

void validate(const GenParams& params);

// Deterministic instance from (params, params.seed). Draw order is fixed:
// per defender (radius, position angle, speed, velocity angle), then per
// attacker (radius, position angle, speed, heading angle). The heading
// angle is drawn even in toward-origin mode so both modes share positions
// for a given seed.
InstanceSpec generate(const GenParams& params);

}  // namespace roboflag
