#include "roboflag/assignment.hpp"

#include <algorithm>
#include <stdexcept>

#include "roboflag/oracle.hpp"

namespace roboflag {

void validate(const Assignment& a, int n) {
  const int m = a.m();
  if (static_cast<int>(a.beta.size()) != m) {
    throw std::invalid_argument("assignment: delta/beta length mismatch");
  }
  if (a.prefix < 0 || a.prefix > m) {
    throw std::invalid_argument("assignment: prefix out of range");
  }
  std::vector<bool> used(m + 1, false);
  for (int i = 0; i < a.prefix; ++i) {
    const int d = a.delta[i];
    const int b = a.beta[i];
    if (d < 1 || d > n) {
      throw std::invalid_argument("assignment: defender index out of range");
    }
    if (b < 1 || b > m || used[b]) {
      throw std::invalid_argument("assignment: attacker index invalid");
    }
    used[b] = true;
    if (i > 0 && a.delta[i - 1] > d) {
      throw std::invalid_argument("assignment: delta must be nondecreasing");
    }
  }
  for (int i = a.prefix; i < m; ++i) {
    if (a.delta[i] != 0 || a.beta[i] != 0) {
      throw std::invalid_argument("assignment: nonzero entry past prefix");
    }
  }
}

std::vector<std::vector<int>> to_sequences(const Assignment& a, int n) {
  validate(a, n);
  std::vector<std::vector<int>> seqs(n);
  for (int i = 0; i < a.prefix; ++i) {
    seqs[a.delta[i] - 1].push_back(a.beta[i]);
  }
  return seqs;
}

Assignment from_sequences(const std::vector<std::vector<int>>& seqs, int m) {
  Assignment a = Assignment::empty(m);
  int slot = 0;
  for (int d = 0; d < static_cast<int>(seqs.size()); ++d) {
    for (const int b : seqs[d]) {
      if (slot >= m) {
        throw std::invalid_argument("from_sequences: more tasks than attackers");
      }
      a.delta[slot] = d + 1;
      a.beta[slot] = b;
      ++slot;
    }
  }
  a.prefix = slot;
  validate(a, static_cast<int>(seqs.size()));
  return a;
}

std::vector<Assignment> expand_node(const Assignment& parent, int n) {
  const int m = parent.m();
  const int p = parent.prefix;
  if (p >= m) {
    throw std::invalid_argument("expand_node: assignment already complete");
  }
  std::vector<bool> used(m + 1, false);
  for (int i = 0; i < p; ++i) used[parent.beta[i]] = true;

  const int d_start = p == 0 ? 1 : parent.delta[p - 1];
  std::vector<Assignment> children;
  children.reserve(static_cast<std::size_t>(n - d_start + 1) *
                   static_cast<std::size_t>(m - p));
  for (int i = d_start; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      if (used[j]) continue;
      Assignment child = parent;
      child.delta[p] = i;
      child.beta[p] = j;
      child.prefix = p + 1;
      children.push_back(std::move(child));
    }
  }
  return children;
}

std::uint64_t count_complete_assignments(int n, int m) {
  if (n < 1 || m < 0) {
    throw std::invalid_argument("count_complete_assignments: need n >= 1, m >= 0");
  }
  std::uint64_t count = 1;
  for (std::uint64_t k = n; k <= static_cast<std::uint64_t>(n) + m - 1; ++k) {
    if (count > UINT64_MAX / k) {
      throw std::overflow_error("count_complete_assignments: 64-bit overflow");
    }
    count *= k;
  }
  return count;
}

EvaluatedAssignment evaluate(const Assignment& a, const InstanceSpec& inst,
                             const InterceptOracle& oracle, double epsilon) {
  const int n = inst.n();
  const int m = inst.m();
  if (a.m() != m) {
    throw std::invalid_argument("evaluate: assignment size does not match instance");
  }
  validate(a, n);

  EvaluatedAssignment out;
  out.assignment = a;
  out.finish_times.assign(n, {});
  out.end_states = inst.defenders;
  out.completion_times.assign(n, 0.0);
  out.gamma.assign(m, -1);

  const auto seqs = to_sequences(a, n);
  for (int d = 0; d < n; ++d) {
    DefenderState state = inst.defenders[d];
    double t = 0.0;
    for (const int b : seqs[d]) {
      const InterceptResult r = oracle.query(state, b - 1, t);
      if (r.feasible()) {
        t += r.delta_t;
        state = DefenderState{r.point->x, r.point->y, 0.0, 0.0};
        out.gamma[b - 1] = 0;
      } else {
        out.gamma[b - 1] = 1;  // enters the zone; time not advanced
      }
      out.finish_times[d].push_back(t);
    }
    out.end_states[d] = state;
    out.completion_times[d] = t;
  }

  double gamma_sum = 0.0;
  for (const int g : out.gamma) {
    if (g == 1) gamma_sum += 1.0;
  }
  double t_max = 0.0;
  for (const double t : out.completion_times) t_max = std::max(t_max, t);
  out.cost = gamma_sum + epsilon * t_max;
  return out;
}

}  // namespace roboflag
