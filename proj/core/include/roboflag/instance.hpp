#pragma once

#include <vector>

#include "roboflag/dynamics.hpp"
#include "roboflag/intercept.hpp"

namespace roboflag {

// A full task-assignment problem instance: defender states at t = 0 and the
// constant-velocity attacker tracks, all initially active.
struct InstanceSpec {
  FieldConfig field;
  std::vector<DefenderState> defenders;
  std::vector<AttackerTrack> attackers;
  SampleGrid grid;
  double epsilon = 0.01;

  int n() const { return static_cast<int>(defenders.size()); }
  int m() const { return static_cast<int>(attackers.size()); }
};

// Throws std::invalid_argument on structural problems (no defenders,
// inactive attackers, non-positive grid or field parameters).
void validate(const InstanceSpec& inst);

}  // namespace roboflag
