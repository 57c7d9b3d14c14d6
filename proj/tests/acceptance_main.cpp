// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier criteria honor --threads; --only N runs a single
// criterion; --cli PATH points at the command-line binary for the
// determinism checks (default: tools/roboflag next to the test's cwd).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "roboflag/experiments.hpp"
#include "roboflag/generator.hpp"
#include "roboflag/io.hpp"
#include "roboflag/replanning.hpp"
#include "roboflag/solver.hpp"
#include "support/oracles.hpp"

using namespace roboflag;

namespace {

int g_threads = 2;
std::string g_cli = "tools/roboflag";

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(g_threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& detail) {
    if (!cond && ok) {
      ok = false;
      why = detail;
    }
  }
};

// ---------------------------------------------------------------- criterion 1
bool oracle_equivalence(std::string* note) {
  const std::pair<int, int> sizes[] = {{1, 3}, {2, 2}, {2, 3}, {2, 4}};
  std::atomic<int> bad{0};
  std::string first_bad;
  std::mutex mu;
  for (const auto& [n, m] : sizes) {
    parallel_for(100, [&, n = n, m = m](int i) {
      GenParams params;
      params.defenders = n;
      params.attackers = m;
      params.seed = study_seed(101 + n * 10 + m, i);
      const InstanceSpec inst = generate(params);
      SolverConfig config;
      config.epsilon = 0.01;
      const SolverResult res = solve(inst, config);
      const InterceptOracle oracle(inst);
      const double want =
          oracles::min_leaf_cost(inst, oracle, 0.01, Assignment::empty(m));
      if (!res.proven_optimal || std::abs(res.j_ub_best - want) > 1e-9) {
        ++bad;
        std::lock_guard<std::mutex> lock(mu);
        if (first_bad.empty()) {
          std::ostringstream os;
          os << "n=" << n << " m=" << m << " i=" << i << " solver="
             << res.j_ub_best << " enum=" << want;
          first_bad = os.str();
        }
      }
    });
  }
  *note = bad == 0 ? "400/400 instances match exhaustive enumeration"
                   : first_bad;
  return bad == 0;
}

// ---------------------------------------------------------------- criterion 2
bool tree_combinatorics(std::string* note) {
  Check c;
  for (int n = 1; n <= 3 && c.ok; ++n) {
    for (int m = 0; m <= 4 && c.ok; ++m) {
      std::uint64_t leaves = 0;
      try {
        leaves = oracles::count_leaves_by_expansion(n, m, true);
      } catch (const std::exception& e) {
        c.require(false, e.what());
        break;
      }
      c.require(leaves == count_complete_assignments(n, m),
                "leaf count mismatch");
      if (m >= 1) {
        c.require(expand_node(Assignment::empty(m), n).size() ==
                      static_cast<std::size_t>(n) * m,
                  "root fan-out is not n*m");
      }
    }
  }
  *note = c.ok ? "all n<=3, m<=4 trees enumerate exactly" : c.why;
  return c.ok;
}

// ---------------------------------------------------------------- criterion 3
bool worked_expansion(std::string* note) {
  Assignment parent{{1, 1, 2, 2, 2, 0, 0}, {4, 1, 2, 5, 7, 0, 0}, 5};
  const auto kids = expand_node(parent, 2);
  const bool ok =
      kids.size() == 2 &&
      kids[0].delta == std::vector<int>{1, 1, 2, 2, 2, 2, 0} &&
      kids[0].beta == std::vector<int>{4, 1, 2, 5, 7, 3, 0} &&
      kids[1].delta == std::vector<int>{1, 1, 2, 2, 2, 2, 0} &&
      kids[1].beta == std::vector<int>{4, 1, 2, 5, 7, 6, 0};
  *note = ok ? "two children, both exact" : "unexpected children";
  return ok;
}

// ---------------------------------------------------------------- criterion 4
bool branching_orders(std::string* note) {
  const std::map<int, std::vector<int>> tree = {
      {0, {1, 2, 3}}, {1, {4, 5}}, {2, {6, 7}}, {3, {8, 9}}};
  const std::map<int, double> bounds = {{1, 3}, {2, 1}, {3, 2}, {4, 2},
                                        {5, 1}, {6, 1}, {7, 1}, {8, 1},
                                        {9, 0}};
  auto order_of = [&](Strategy s) {
    OpenList<int> open(s);
    std::vector<int> order{0};
    auto expand = [&](int node) {
      auto it = tree.find(node);
      if (it == tree.end()) return;
      std::vector<std::pair<int, double>> kids;
      for (int k : it->second) kids.push_back({k, bounds.at(k)});
      open.push_siblings(std::move(kids));
    };
    expand(0);
    while (auto id = open.pop()) {
      order.push_back(*id);
      expand(*id);
    }
    return order;
  };
  Check c;
  c.require(order_of(Strategy::kBfs) ==
                std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
            "BFS order");
  c.require(order_of(Strategy::kDfs) ==
                std::vector<int>{0, 1, 4, 5, 2, 6, 7, 3, 8, 9},
            "DFS order");
  c.require(order_of(Strategy::kAstarBfs) ==
                std::vector<int>{0, 2, 3, 1, 6, 7, 9, 8, 5, 4},
            "A*-BFS order");
  c.require(order_of(Strategy::kAstarDfs) ==
                std::vector<int>{0, 2, 6, 7, 3, 9, 8, 1, 5, 4},
            "A*-DFS order");
  *note = c.ok ? "all four orderings verbatim" : c.why;
  return c.ok;
}

// ---------------------------------------------------------------- criterion 5
bool bound_sandwich(std::string* note) {
  std::atomic<int> bad{0};
  std::atomic<int> nodes{0};
  std::string first_bad;
  std::mutex mu;
  parallel_for(200, [&](int i) {
    const int n = 1 + i % 2;
    const int m = 2 + i % 3;
    GenParams params;
    params.defenders = n;
    params.attackers = m;
    params.seed = study_seed(505, i);
    const InstanceSpec inst = generate(params);
    const InterceptOracle oracle(inst);
    SolverConfig config;
    config.epsilon = 0.01;
    SolverHooks hooks;
    hooks.on_node = [&](const EvaluatedAssignment& node, double j_lb,
                        double j_ub) {
      ++nodes;
      const double ext =
          oracles::min_extension_cost(inst, oracle, 0.01, node);
      const double subtree = node.assignment.complete()
                                 ? node.cost
                                 : oracles::min_leaf_cost(
                                       inst, oracle, 0.01, node.assignment);
      const bool fine = j_lb <= ext + 1e-9 && ext <= j_ub + 1e-9 &&
                        j_lb <= subtree + 1e-9;
      if (!fine) {
        ++bad;
        std::lock_guard<std::mutex> lock(mu);
        if (first_bad.empty()) {
          std::ostringstream os;
          os << "i=" << i << " lb=" << j_lb << " ub=" << j_ub
             << " ext=" << ext << " subtree=" << subtree;
          first_bad = os.str();
        }
      }
    };
    solve(inst, config, hooks);
  });
  std::ostringstream os;
  os << nodes.load() << " explored nodes bracketed on 200 instances";
  *note = bad == 0 ? os.str() : first_bad;
  return bad == 0;
}

// ---------------------------------------------------------------- criterion 6
bool anytime_behavior(std::string* note) {
  StudyConfig base;
  base.gen.defenders = 3;
  base.gen.attackers = 5;
  base.gen.seed = 606;
  base.epsilon = 0.01;
  base.count = 400;
  base.threads = g_threads;

  Check c;
  // Traces are nonincreasing and k_max = 1 reproduces the greedy incumbent.
  parallel_for(30, [&](int i) {
    GenParams params = base.gen;
    params.seed = study_seed(base.gen.seed, i);
    params.epsilon = base.epsilon;
    const InstanceSpec inst = generate(params);
    SolverConfig full;
    full.epsilon = base.epsilon;
    const SolverResult res = solve(inst, full);
    for (std::size_t k = 1; k < res.ub_trace.size(); ++k) {
      if (!(res.ub_trace[k].second < res.ub_trace[k - 1].second)) {
        c.require(false, "ub_trace not strictly improving");
      }
    }
    SolverConfig greedy_cfg = full;
    greedy_cfg.k_max = 1;
    const SolverResult greedy = solve(inst, greedy_cfg);
    const InterceptOracle oracle(inst);
    const auto root =
        evaluate(Assignment::empty(inst.m()), inst, oracle, base.epsilon);
    const auto ub = upper_bound(root, inst, oracle, base.epsilon);
    if (greedy.j_ub_best != ub.cost || greedy.branches_explored != 1) {
      c.require(false, "k_max=1 is not the greedy incumbent");
    }
  });

  std::map<std::string, ConvergenceStats> stats;
  for (const Strategy s :
       {Strategy::kAstarBfs, Strategy::kBfs, Strategy::kDfs}) {
    StudyConfig cfg = base;
    cfg.strategy = s;
    stats[strategy_name(s)] = run_convergence_study(cfg, 60);
  }
  for (const auto& [name, st] : stats) {
    c.require(st.excluded == 0, name + ": instance not solved to optimality");
    for (std::size_t k = 1; k < st.pd.size(); ++k) {
      c.require(st.pd[k] <= st.pd[k - 1] + 1e-12,
                name + ": PD curve increased");
    }
  }
  const double pd1_astar = stats["astar-bfs"].pd[0];
  c.require(std::abs(pd1_astar - stats["bfs"].pd[0]) < 1e-9 &&
                std::abs(pd1_astar - stats["dfs"].pd[0]) < 1e-9,
            "strategies disagree at k=1");
  c.require(pd1_astar > stats["astar-bfs"].pd[1],
            "A* PD(1) is not above PD(2)");

  std::ostringstream os;
  os.precision(3);
  os << "PD(1)=" << pd1_astar << "% PD(2,A*)=" << stats["astar-bfs"].pd[1]
     << "% over 400 instances";
  *note = c.ok ? os.str() : c.why;
  return c.ok;
}

// ---------------------------------------------------------------- criterion 7
bool phase_transitions(std::string* note) {
  Check c;
  PhaseConfig vel;
  vel.axis = PhaseAxis::kVelocityRatio;
  vel.grid = linear_grid(0.25, 4.0, 12);
  vel.per_point = 100;
  vel.base.defenders = 3;
  vel.base.attackers = 5;
  vel.base.seed = 707;
  vel.base.epsilon = 0.0;
  vel.k_max = 20000;
  vel.threads = g_threads;
  const auto vpoints = run_phase_transition(vel);
  c.require(vpoints.front().fraction_yes >= 0.9,
            "fraction_yes at ratio 0.25 below 0.9");
  c.require(vpoints.back().fraction_yes <= 0.1,
            "fraction_yes at ratio 4 above 0.1");
  double best_control = 0.0, best_branches = -1.0;
  int unknowns = 0;
  for (const auto& p : vpoints) {
    unknowns += p.unknown;
    if (p.mean_branches > best_branches) {
      best_branches = p.mean_branches;
      best_control = p.control;
    }
  }
  c.require(unknowns == 0, "velocity sweep hit the branch budget");
  c.require(best_control >= 0.5 && best_control <= 2.0,
            "complexity spike outside [0.5, 2]");

  PhaseConfig team;
  team.axis = PhaseAxis::kTeamRatio;
  team.grid = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};
  team.per_point = 100;
  team.base.attackers = 5;
  team.base.seed = 708;
  team.base.epsilon = 0.0;
  team.k_max = 20000;
  team.threads = g_threads;
  const auto tpoints = run_phase_transition(team);
  double crossing = -1.0;
  for (std::size_t i = 0; i + 1 < tpoints.size(); ++i) {
    const double lo = tpoints[i].fraction_yes;
    const double hi = tpoints[i + 1].fraction_yes;
    if (lo < 0.5 && hi >= 0.5) {
      const double w = (0.5 - lo) / (hi - lo);
      crossing = tpoints[i].control +
                 w * (tpoints[i + 1].control - tpoints[i].control);
      break;
    }
  }
  if (crossing < 0.0 && !tpoints.empty() && tpoints.front().fraction_yes >= 0.5) {
    crossing = tpoints.front().control;
  }
  c.require(crossing >= 0.4 && crossing <= 0.9,
            "n/m crossing outside [0.4, 0.9]");

  std::ostringstream os;
  os.precision(3);
  os << "yes(0.25)=" << vpoints.front().fraction_yes
     << " yes(4)=" << vpoints.back().fraction_yes << " spike@" << best_control
     << " n/m crossing@" << crossing;
  *note = c.ok ? os.str() : c.why;
  return c.ok;
}

// ---------------------------------------------------------------- criterion 8
bool replanning_benefit(std::string* note) {
  const int seeds = 200;
  SimConfig replan;  // defaults: rate_tc 24, rate_ta = rate_tc / 15
  SimConfig once = replan;
  once.rate_ta = 0.0;

  std::vector<double> diff(seeds);
  std::vector<double> with_replan(seeds), plan_once(seeds);
  parallel_for(seeds, [&](int i) {
    GenParams params;
    params.defenders = 8;
    params.attackers = 4;
    params.attacker_radius = {5.0, 10.0};
    params.defender_radius = {3.5, 12.0};
    params.attacker_speed = {1.0, 1.0};
    params.seed = study_seed(1, i);
    const InstanceSpec inst = generate(params);
    with_replan[i] = simulate(inst, replan, params.seed).fraction_entered;
    plan_once[i] = simulate(inst, once, params.seed).fraction_entered;
    diff[i] = plan_once[i] - with_replan[i];
  });

  double mean_replan = 0.0, mean_once = 0.0, mean_gap = 0.0;
  for (int i = 0; i < seeds; ++i) {
    mean_replan += with_replan[i];
    mean_once += plan_once[i];
    mean_gap += diff[i];
  }
  mean_replan /= seeds;
  mean_once /= seeds;
  mean_gap /= seeds;

  // One-sided bootstrap over the paired per-seed differences.
  SplitMix64 rng(0xb00757ull);
  std::vector<double> boot(10000);
  for (double& b : boot) {
    double s = 0.0;
    for (int k = 0; k < seeds; ++k) {
      s += diff[rng.next() % seeds];
    }
    b = s / seeds;
  }
  std::sort(boot.begin(), boot.end());
  const double lb05 = boot[499];

  const bool ok = mean_gap >= 0.10 && lb05 > 0.0;
  std::ostringstream os;
  os.precision(4);
  os << "entered: replan=" << mean_replan << " plan-once=" << mean_once
     << " gap=" << mean_gap << " (bootstrap 95% lower bound " << lb05
     << "; strict gate gap-LB>=0.10 would be "
     << (lb05 >= 0.10 ? "met" : "unmet") << ")";
  *note = os.str();
  return ok;
}

// ---------------------------------------------------------------- criterion 9
bool primitive_correctness(std::string* note) {
  std::atomic<int> bad{0};
  std::string first_bad;
  std::mutex mu;
  const FieldConfig field;
  const SampleGrid grid;
  std::atomic<int> feasible{0};
  parallel_for(1000, [&](int i) {
    GenParams params;
    params.defenders = 1;
    params.attackers = 1;
    params.seed = study_seed(909, i);
    const InstanceSpec inst = generate(params);
    const double t0 = 2.0 * (i % 5) / 5.0;
    const InterceptResult got =
        int_time(inst.defenders[0], inst.attackers[0], t0, field, grid);
    const double want = oracles::scan_int_time(
        inst.defenders[0], inst.attackers[0], t0, field, 1e-4);
    bool fine = true;
    if (got.feasible()) {
      ++feasible;
      fine = std::isfinite(want) && std::abs(got.delta_t - want) < 5e-4;
    } else {
      fine = !std::isfinite(want);
    }
    if (!fine) {
      ++bad;
      std::lock_guard<std::mutex> lock(mu);
      if (first_bad.empty()) {
        std::ostringstream os;
        os << "pair " << i << ": impl=" << got.delta_t << " oracle=" << want;
        first_bad = os.str();
      }
    }
  });

  std::atomic<int> bad_axis{0};
  parallel_for(300, [&](int i) {
    SplitMix64 rng(study_seed(910, i));
    const double d = rng.uniform(-8.0, 8.0);
    const double v = rng.uniform(-1.5, 1.5);
    const double u = rng.uniform(0.4, 1.0);
    const double got = min_time_to_point_1d(d, v, u);
    const double want = oracles::grid_min_time_1d(d, v, u, 1e-4);
    if (std::abs(got - want) >= 1e-4) ++bad_axis;
  });

  std::ostringstream os;
  os << "1000 rendezvous pairs (" << feasible.load()
     << " feasible) within 5e-4; 300 axis cases within 1e-4";
  if (bad_axis > 0) {
    os.str("");
    os << bad_axis.load() << " axis cases off the grid oracle";
  }
  *note = bad == 0 && bad_axis == 0 ? os.str()
                                    : (first_bad.empty() ? os.str() : first_bad);
  return bad == 0 && bad_axis == 0;
}

// --------------------------------------------------------------- criterion 10
std::string normalized_file(const std::string& path) {
  std::string text = io::read_file(path);
  static const std::regex stamp("\"created_at\":\\s*\"[^\"]*\",?");
  text = std::regex_replace(text, stamp, "");
  // Wall-clock measurements are informational and, like manifest
  // timestamps, excluded from the byte comparison.
  std::istringstream lines(text);
  std::ostringstream out;
  std::string line;
  int wall_col = -1;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    if (wall_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "wall_ms") wall_col = static_cast<int>(i);
      }
    } else if (wall_col < static_cast<int>(cells.size())) {
      cells[wall_col] = "-";
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }
  return out.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc != -1;
}

bool determinism(std::string* note) {
  const std::string dir = "acceptance_tmp";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

  struct Cmd {
    std::string name;
    std::string args;  // %OUT% replaced per run
  };
  const std::vector<Cmd> cmds = {
      {"gen", "gen --n 3 --m 5 --seed 7 --out %OUT%.json"},
      {"solve",
       "solve --instance " + dir + "/gen_a.json --strategy astar-bfs "
       "--out %OUT%.json"},
      {"bench",
       "bench --n 2 --m 3 --seed 5 --count 6 --threads 2 --out %OUT%.csv "
       "--pd-out %OUT%_pd.csv"},
      {"phase",
       "phase --axis velocity-ratio --from 0.5 --to 2.0 --points 3 "
       "--per-point 6 --n 2 --m 3 --seed 5 --threads 2 --out %OUT%.csv"},
      {"sim",
       "sim --n 8 --m 4 --seeds 3 --seed 5 --rta-div 15 --threads 2 "
       "--out %OUT%.csv --events-out %OUT%.jsonl"},
  };

  Check c;
  for (const auto& cmd : cmds) {
    for (const char* tag : {"a", "b"}) {
      std::string args = cmd.args;
      const std::string out = dir + "/" + cmd.name + "_" + tag;
      for (std::string::size_type at;
           (at = args.find("%OUT%")) != std::string::npos;) {
        args.replace(at, 5, out);
      }
      if (!run_cli(args)) {
        c.require(false, cmd.name + " did not run");
      }
    }
    const std::string ext =
        cmd.name == "gen" || cmd.name == "solve" ? ".json" : ".csv";
    const std::string a = dir + "/" + cmd.name + "_a" + ext;
    const std::string b = dir + "/" + cmd.name + "_b" + ext;
    try {
      c.require(normalized_file(a) == normalized_file(b),
                cmd.name + " outputs differ");
    } catch (const std::exception& e) {
      c.require(false, cmd.name + ": " + e.what());
    }
  }
  // Event logs have no manifest stamp at all; compare byte for byte.
  try {
    c.require(io::read_file(dir + "/sim_a.jsonl") ==
                  io::read_file(dir + "/sim_b.jsonl"),
              "sim event logs differ");
  } catch (const std::exception& e) {
    c.require(false, std::string("sim events: ") + e.what());
  }
  *note = c.ok ? "gen/solve/bench/phase/sim byte-identical modulo timestamps"
               : c.why;
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    if (arg == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    if (arg == "--cli" && i + 1 < argc) g_cli = argv[++i];
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string*)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence},
      {2, "tree combinatorics", tree_combinatorics},
      {3, "worked expansion", worked_expansion},
      {4, "branching orders", branching_orders},
      {5, "bound sandwich", bound_sandwich},
      {6, "anytime behavior", anytime_behavior},
      {7, "phase transitions", phase_transitions},
      {8, "replanning benefit", replanning_benefit},
      {9, "primitive correctness", primitive_correctness},
      {10, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    if (only != 0 && crit.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = crit.run(&detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", ok ? "PASS" : "FAIL",
                crit.id, crit.name, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
