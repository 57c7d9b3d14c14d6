#include "roboflag/replanning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "roboflag/solver.hpp"

namespace roboflag {

void validate(const SimConfig& cfg) {
  if (!(cfg.base_dt > 0.0)) {
    throw std::invalid_argument("sim: base_dt must be positive");
  }
  if (!(cfg.t_end > 0.0)) {
    throw std::invalid_argument("sim: t_end must be positive");
  }
  if (cfg.rate_ta < 0.0 || cfg.rate_tc < 0.0 || cfg.rate_tg < 0.0 ||
      cfg.rate_i < 0.0) {
    throw std::invalid_argument("sim: rates must be >= 0");
  }
  if (cfg.rate_ta > 0.0 && cfg.rate_tc > 0.0 && !(cfg.rate_ta < cfg.rate_tc)) {
    throw std::invalid_argument("sim: rate_ta must be below rate_tc");
  }
  if (cfg.rate_i > 0.0 && cfg.rate_tg > 0.0 && !(cfg.rate_i < cfg.rate_tg)) {
    throw std::invalid_argument("sim: rate_i must be below rate_tg");
  }
  if (!(cfg.beta_enlarge > 1.0)) {
    throw std::invalid_argument("sim: beta_enlarge must exceed 1");
  }
  if (!(cfg.defender_radius > 0.0) || !(cfg.intercept_radius > 0.0)) {
    throw std::invalid_argument("sim: radii must be positive");
  }
  if (!(cfg.avoid_margin >= 0.0)) {
    throw std::invalid_argument("sim: avoid_margin must be >= 0");
  }
  if (cfg.solver_k_max < 1) {
    throw std::invalid_argument("sim: solver_k_max must be >= 1");
  }
}

ControlInput ControlSchedule::control_at(double t_offset) const {
  double t = t_offset;
  for (const auto& seg : segments) {
    if (t < seg.duration) return seg.u;
    t -= seg.duration;
  }
  return {0.0, 0.0};
}

double ControlSchedule::horizon() const {
  double h = 0.0;
  for (const auto& seg : segments) h += seg.duration;
  return h;
}

ControlSchedule attacker_trajectory(const DefenderState& vehicle,
                                    const Vec2& destination) {
  const MinTimeAxisPlan px = min_time_axis_plan(
      vehicle.x - destination.x, vehicle.vx, kAxisControlBound);
  const MinTimeAxisPlan py = min_time_axis_plan(
      vehicle.y - destination.y, vehicle.vy, kAxisControlBound);

  auto axis_control = [](const MinTimeAxisPlan& plan, double t) {
    if (t < plan.switch_time) return plan.first_control;
    if (t < plan.total_time) return -plan.first_control;
    return 0.0;
  };

  double cuts[4] = {px.switch_time, px.total_time, py.switch_time,
                    py.total_time};
  std::sort(cuts, cuts + 4);

  ControlSchedule schedule;
  double prev = 0.0;
  for (const double cut : cuts) {
    if (cut - prev < 1e-12) {
      prev = std::max(prev, cut);
      continue;
    }
    const double mid = 0.5 * (prev + cut);
    schedule.segments.push_back(
        {cut - prev, {axis_control(px, mid), axis_control(py, mid)}});
    prev = cut;
  }
  return schedule;
}

DefenderState follow_schedule(const DefenderState& s,
                              const ControlSchedule& schedule, double t0,
                              double dt) {
  DefenderState state = s;
  double at = t0;
  double remaining = dt;
  std::size_t i = 0;
  double seg_start = 0.0;
  while (remaining > 1e-15) {
    ControlInput u{0.0, 0.0};
    double span = remaining;
    if (i < schedule.segments.size()) {
      const auto& seg = schedule.segments[i];
      if (at >= seg_start + seg.duration - 1e-15) {
        seg_start += seg.duration;
        ++i;
        continue;
      }
      u = seg.u;
      span = std::min(remaining, seg_start + seg.duration - at);
    }
    state = step_defender(state, u, span);
    at += span;
    remaining -= span;
  }
  return state;
}

Vec2 attacker_intelligence(const Vec2& attacker_pos,
                           const std::vector<DefenderState>& defenders,
                           const SimConfig& cfg) {
  const Vec2 origin{0.0, 0.0};
  const double block_radius = cfg.beta_enlarge * cfg.defender_radius;
  const double seg_len = attacker_pos.norm();
  if (seg_len == 0.0) return origin;
  const Vec2 dir = attacker_pos * (-1.0 / seg_len);

  int blocker = -1;
  double blocker_dist = kInfiniteTime;
  for (std::size_t i = 0; i < defenders.size(); ++i) {
    const Vec2 c = defenders[i].pos();
    // Distance from the disc center to the attacker->origin segment.
    const Vec2 rel = c - attacker_pos;
    const double along = std::clamp(rel.dot(dir), 0.0, seg_len);
    const Vec2 closest = attacker_pos + dir * along;
    if (distance(c, closest) > block_radius) continue;
    const double d = distance(c, attacker_pos);
    if (d < blocker_dist) {
      blocker_dist = d;
      blocker = static_cast<int>(i);
    }
  }
  if (blocker < 0) return origin;

  const Vec2 c = defenders[blocker].pos();
  const double waypoint_radius = block_radius * (1.0 + cfg.avoid_margin);
  const double d = distance(c, attacker_pos);
  if (d <= waypoint_radius) return attacker_pos;  // enclosed: stall

  // Tangent points of the inflated circle as seen from the attacker.
  const double eta = std::atan2(attacker_pos.y - c.y, attacker_pos.x - c.x);
  const double psi = std::acos(waypoint_radius / d);
  const Vec2 t_ccw{c.x + waypoint_radius * std::cos(eta + psi),
                   c.y + waypoint_radius * std::sin(eta + psi)};
  const Vec2 t_cw{c.x + waypoint_radius * std::cos(eta - psi),
                  c.y + waypoint_radius * std::sin(eta - psi)};
  const double len_ccw = distance(attacker_pos, t_ccw) + t_ccw.norm();
  const double len_cw = distance(attacker_pos, t_cw) + t_cw.norm();
  return len_cw < len_ccw ? t_cw : t_ccw;
}

namespace {

struct SimAttacker {
  DefenderState state;
  AttackerStatus status = AttackerStatus::kActive;
  Vec2 vel_estimate;
  Vec2 destination;
  ControlSchedule schedule;
  double schedule_age = 0.0;

  bool active() const { return status == AttackerStatus::kActive; }
};

struct SimDefender {
  DefenderState state;
  std::vector<int> sequence;  // 0-based world attacker ids, in order
  // One-way task cursor: a task judged unreachable is skipped for good,
  // exactly like the completion-time recursion; only a fresh assignment
  // rewinds it.
  std::size_t cursor = 0;
  ControlSchedule schedule;
  double schedule_age = 0.0;
};

std::string sequences_detail(const std::vector<SimDefender>& defenders) {
  std::ostringstream os;
  for (std::size_t d = 0; d < defenders.size(); ++d) {
    if (d) os << '|';
    for (std::size_t i = 0; i < defenders[d].sequence.size(); ++i) {
      if (i) os << ',';
      os << defenders[d].sequence[i] + 1;
    }
  }
  return os.str();
}

}  // namespace

SimOutcome simulate(const InstanceSpec& inst, const SimConfig& cfg,
                    std::uint64_t seed) {
  validate(inst);
  validate(cfg);

  const int n = inst.n();
  const int m = inst.m();
  SimOutcome out;
  out.attacker_status.assign(m, AttackerStatus::kActive);
  out.events.push_back({0.0, "start", -1, -1,
                        "seed=" + std::to_string(seed)});

  std::vector<SimDefender> defenders(n);
  for (int d = 0; d < n; ++d) defenders[d].state = inst.defenders[d];
  std::vector<SimAttacker> attackers(m);
  for (int a = 0; a < m; ++a) {
    attackers[a].state = DefenderState{inst.attackers[a].p, inst.attackers[a].q,
                                       inst.attackers[a].vp,
                                       inst.attackers[a].vq};
    attackers[a].vel_estimate = inst.attackers[a].velocity();
    attackers[a].destination = attackers[a].state.pos();
  }

  const double inf = kInfiniteTime;
  double next_ta = 0.0;
  double next_tc = 0.0;
  double next_i = 0.0;
  double next_tg = 0.0;
  const double iv_ta = cfg.rate_ta > 0.0 ? 1.0 / cfg.rate_ta : inf;
  const double iv_tc = cfg.rate_tc > 0.0 ? 1.0 / cfg.rate_tc : inf;
  const double iv_i = cfg.rate_i > 0.0 ? 1.0 / cfg.rate_i : inf;
  const double iv_tg = cfg.rate_tg > 0.0 ? 1.0 / cfg.rate_tg : inf;

  auto active_count = [&]() {
    int c = 0;
    for (const auto& a : attackers) c += a.active() ? 1 : 0;
    return c;
  };

  auto run_assignment = [&](double t) {
    // Plan over active attackers with constant-velocity estimates.
    std::vector<int> world_id;
    InstanceSpec plan;
    plan.field = inst.field;
    plan.grid = inst.grid;
    plan.epsilon = cfg.epsilon;
    for (int d = 0; d < n; ++d) plan.defenders.push_back(defenders[d].state);
    for (int a = 0; a < m; ++a) {
      if (!attackers[a].active()) continue;
      AttackerTrack track;
      track.p = attackers[a].state.x;
      track.q = attackers[a].state.y;
      track.vp = attackers[a].vel_estimate.x;
      track.vq = attackers[a].vel_estimate.y;
      plan.attackers.push_back(track);
      world_id.push_back(a);
    }
    for (auto& d : defenders) {
      d.sequence.clear();
      d.cursor = 0;
    }
    if (!plan.attackers.empty()) {
      SolverConfig sc;
      sc.strategy = cfg.solver_strategy;
      sc.k_max = cfg.solver_k_max;
      sc.epsilon = cfg.epsilon;
      const SolverResult res = solve(plan, sc);
      out.solver_branches += res.branches_explored;
      const auto seqs = to_sequences(res.best.assignment, n);
      for (int d = 0; d < n; ++d) {
        for (const int b : seqs[d]) {
          defenders[d].sequence.push_back(world_id[b - 1]);
        }
      }
    }
    ++out.ta_solves;
    out.events.push_back({t, "assign", -1, -1, sequences_detail(defenders)});
  };

  auto retarget_defender = [&](int d, double t) {
    SimDefender& def = defenders[d];
    def.schedule = ControlSchedule{};
    def.schedule_age = 0.0;
    while (def.cursor < def.sequence.size()) {
      const int a = def.sequence[def.cursor];
      if (!attackers[a].active()) {
        ++def.cursor;
        continue;
      }
      AttackerTrack track;
      track.p = attackers[a].state.x;
      track.q = attackers[a].state.y;
      track.vp = attackers[a].vel_estimate.x;
      track.vq = attackers[a].vel_estimate.y;
      const InterceptResult r =
          int_time(def.state, track, 0.0, inst.field, inst.grid);
      if (!r.feasible()) {
        // Cannot reach it before entry: abandon the task and move on.
        ++def.cursor;
        continue;
      }
      Vec2 dest = *r.point;
      const double dest_norm = dest.norm();
      if (dest_norm < inst.field.defense_zone_radius && dest_norm > 0.0) {
        dest = dest * (inst.field.defense_zone_radius / dest_norm);
      }
      def.schedule = attacker_trajectory(def.state, dest);
      out.events.push_back({t, "traj", d, a, ""});
      return;
    }
    // Sequence exhausted: coast to rest.
  };

  double t = 0.0;
  const double tol = 1e-9;
  while (true) {
    if (t >= next_ta - tol) {
      run_assignment(t);
      next_ta = iv_ta < inf ? next_ta + iv_ta : inf;
    }
    if (t >= next_tc - tol) {
      for (int d = 0; d < n; ++d) retarget_defender(d, t);
      next_tc = iv_tc < inf ? next_tc + iv_tc : inf;
    }
    if (t >= next_i - tol) {
      std::vector<DefenderState> def_states;
      def_states.reserve(n);
      for (const auto& d : defenders) def_states.push_back(d.state);
      for (int a = 0; a < m; ++a) {
        if (!attackers[a].active()) continue;
        attackers[a].destination =
            attacker_intelligence(attackers[a].state.pos(), def_states, cfg);
        out.events.push_back({t, "destination", -1, a, ""});
      }
      next_i = iv_i < inf ? next_i + iv_i : inf;
    }
    if (t >= next_tg - tol) {
      for (int a = 0; a < m; ++a) {
        if (!attackers[a].active()) continue;
        attackers[a].schedule =
            attacker_trajectory(attackers[a].state, attackers[a].destination);
        attackers[a].schedule_age = 0.0;
      }
      next_tg = iv_tg < inf ? next_tg + iv_tg : inf;
    }

    if (t >= cfg.t_end - tol || active_count() == 0) break;

    double dt = std::min(cfg.base_dt, cfg.t_end - t);
    for (const double ev : {next_ta, next_tc, next_i, next_tg}) {
      if (ev > t + tol && ev < inf) dt = std::min(dt, ev - t);
    }

    for (auto& def : defenders) {
      def.state = follow_schedule(def.state, def.schedule, def.schedule_age, dt);
      def.schedule_age += dt;
    }
    for (auto& att : attackers) {
      if (!att.active()) continue;
      const Vec2 before = att.state.pos();
      att.state = follow_schedule(att.state, att.schedule, att.schedule_age, dt);
      att.schedule_age += dt;
      att.vel_estimate = (att.state.pos() - before) * (1.0 / dt);
    }
    t += dt;

    // Entry first: the zone boundary counts as entered, so a same-step
    // capture cannot rescue an attacker that has already crossed.
    for (int a = 0; a < m; ++a) {
      if (!attackers[a].active()) continue;
      if (attackers[a].state.pos().norm() <= inst.field.defense_zone_radius) {
        attackers[a].status = AttackerStatus::kEntered;
        out.attacker_status[a] = AttackerStatus::kEntered;
        ++out.entered;
        out.events.push_back({t, "entry", -1, a, ""});
      }
    }
    for (int d = 0; d < n; ++d) {
      for (int a = 0; a < m; ++a) {
        if (!attackers[a].active()) continue;
        if (distance(defenders[d].state.pos(), attackers[a].state.pos()) <=
            cfg.intercept_radius) {
          attackers[a].status = AttackerStatus::kIntercepted;
          out.attacker_status[a] = AttackerStatus::kIntercepted;
          ++out.intercepted;
          out.events.push_back({t, "intercept", d, a, ""});
        }
      }
    }
  }

  out.active_at_end = active_count();
  out.fraction_entered =
      m > 0 ? static_cast<double>(out.entered) / static_cast<double>(m) : 0.0;
  for (const auto& d : defenders) out.final_defenders.push_back(d.state);
  for (const auto& a : attackers) out.final_attackers.push_back(a.state);
  out.events.push_back({t, "end", -1, -1,
                        "entered=" + std::to_string(out.entered) +
                            " intercepted=" + std::to_string(out.intercepted)});
  return out;
}

}  // namespace roboflag
