#pragma once

#include <cstdint>
#include <vector>

#include "roboflag/instance.hpp"

namespace roboflag {

// Canonical delta/beta encoding of a (partial) assignment over m attackers.
// delta(i) is the defender index receiving the i-th assigned task, beta(i)
// the attacker index intercepted by it; both are 1-based in this encoding
// and zero past the assigned prefix. delta is nondecreasing over the prefix
// and beta entries are distinct, which makes the encoding unique.
struct Assignment {
  std::vector<int> delta;
  std::vector<int> beta;
  int prefix = 0;

  static Assignment empty(int m) {
    return {std::vector<int>(m, 0), std::vector<int>(m, 0), 0};
  }
  int m() const { return static_cast<int>(delta.size()); }
  bool complete() const { return prefix == m(); }
};

// Throws std::invalid_argument if the vectors violate the canonical form
// for a problem with n defenders.
void validate(const Assignment& a, int n);

// Per-defender intercept sequences (1-based attacker indices), the inverse
// of the delta/beta encoding.
std::vector<std::vector<int>> to_sequences(const Assignment& a, int n);

// Canonical re-encoding of per-defender sequences.
Assignment from_sequences(const std::vector<std::vector<int>>& seqs, int m);

// Children of a partial assignment: one new (defender, attacker) pair per
// child, defenders from delta(prefix) upward so the canonical order is
// preserved. Exactly (n - delta(p) + 1) * (m - p) children; n * m at the
// root. Throws std::invalid_argument on a complete assignment.
std::vector<Assignment> expand_node(const Assignment& parent, int n);

// (n + m - 1)! / (n - 1)!, the number of complete assignments (leaves).
// Throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t count_complete_assignments(int n, int m);

// Evaluation of an assignment against an instance: completion times by the
// task recursion (time is not advanced past an unreachable attacker), entry
// indicators for assigned attackers, and the scalar cost
//   J = sum of gamma over assigned attackers + epsilon * max completion time.
struct EvaluatedAssignment {
  Assignment assignment;
  std::vector<std::vector<double>> finish_times;  // per defender, per task
  std::vector<DefenderState> end_states;          // after the full sequence
  std::vector<double> completion_times;           // t_d(m_d)
  std::vector<int> gamma;  // per attacker: 1 enters, 0 intercepted, -1 unassigned
  double cost = 0.0;
};

class InterceptOracle;

EvaluatedAssignment evaluate(const Assignment& a, const InstanceSpec& inst,
                             const InterceptOracle& oracle, double epsilon);

}  // namespace roboflag
