// Command-line front end: instance generation, solving, and the study
// harnesses. Exit codes: 0 success, 2 usage error, 3 input error,
// 4 budget expired with a best-so-far result written.

#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roboflag/experiments.hpp"
#include "roboflag/generator.hpp"
#include "roboflag/io.hpp"
#include "roboflag/replanning.hpp"
#include "roboflag/solver.hpp"

namespace {

using nlohmann::json;
using namespace roboflag;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitBudget = 4;

struct GenFlags {
  GenParams params;
  std::string heading = "toward-origin";
  std::string out;
};

void add_gen_options(CLI::App* cmd, GenFlags& f) {
  cmd->add_option("--n", f.params.defenders, "Defender count")->required();
  cmd->add_option("--m", f.params.attackers, "Attacker count")->required();
  cmd->add_option("--seed", f.params.seed, "Generator seed");
  cmd->add_option("--heading", f.heading, "toward-origin | uniform")
      ->check(CLI::IsMember({"toward-origin", "uniform"}));
  cmd->add_option("--ra-min", f.params.attacker_radius.lo, "Attacker radius min");
  cmd->add_option("--ra-max", f.params.attacker_radius.hi, "Attacker radius max");
  cmd->add_option("--va-min", f.params.attacker_speed.lo, "Attacker speed min");
  cmd->add_option("--va-max", f.params.attacker_speed.hi, "Attacker speed max");
  cmd->add_option("--rd-min", f.params.defender_radius.lo, "Defender radius min");
  cmd->add_option("--rd-max", f.params.defender_radius.hi, "Defender radius max");
  cmd->add_option("--vd-min", f.params.defender_speed.lo, "Defender speed min");
  cmd->add_option("--vd-max", f.params.defender_speed.hi, "Defender speed max");
  cmd->add_option("--rdz", f.params.defense_zone_radius, "Defense Zone radius");
  cmd->add_option("--epsilon", f.params.epsilon, "Cost weight epsilon");
  cmd->add_option("--sample-time", f.params.sample_time, "Attacker sample time");
}

GenParams finish_gen_params(GenFlags& f) {
  f.params.heading = f.heading == "uniform" ? AttackerHeading::kUniformRandom
                                            : AttackerHeading::kTowardOrigin;
  return f.params;
}

int cmd_gen(const GenFlags& flags_in) {
  GenFlags flags = flags_in;
  const GenParams params = finish_gen_params(flags);
  const InstanceSpec inst = generate(params);
  json j = io::instance_to_json(inst);
  j["manifest"] = io::make_manifest(params.seed, io::gen_params_to_json(params));
  io::write_file_atomic(flags.out, j.dump(2) + "\n");
  return kExitOk;
}

struct SolveFlags {
  std::string instance_path;
  std::string out;
  std::string strategy = "astar-bfs";
  std::uint64_t k_max = 0;  // 0 = unbounded
  std::optional<double> epsilon;
  std::optional<double> budget_ms;
};

int cmd_solve(const SolveFlags& flags) {
  const InstanceSpec inst =
      io::instance_from_json(json::parse(io::read_file(flags.instance_path)));

  SolverConfig config;
  config.strategy = *strategy_from_name(flags.strategy);
  config.k_max = flags.k_max == 0 ? kUnboundedBranches : flags.k_max;
  config.epsilon = flags.epsilon.value_or(inst.epsilon);
  if (flags.budget_ms) config.time_budget_ms = flags.budget_ms;

  const SolverResult result = solve(inst, config);

  json echo;
  echo["instance"] = flags.instance_path;
  echo["strategy"] = flags.strategy;
  echo["k_max"] = config.k_max;
  echo["epsilon"] = config.epsilon;
  if (flags.budget_ms) echo["budget_ms"] = *flags.budget_ms;
  json j = io::solver_result_to_json(result, config, inst.n());
  j["manifest"] = io::make_manifest(0, echo);
  j["instance_path"] = flags.instance_path;
  io::write_file_atomic(flags.out, j.dump(2) + "\n");

  std::cout << "J=" << io::format_double(result.j_ub_best)
            << " branches=" << result.branches_explored
            << " proven_optimal=" << (result.proven_optimal ? "true" : "false")
            << "\n";
  return result.proven_optimal ? kExitOk : kExitBudget;
}

struct BenchFlags {
  GenFlags gen;
  int count = 100;
  std::string strategy = "astar-bfs";
  std::uint64_t k_max = 0;
  std::optional<double> budget_ms;
  int threads = 1;
  std::string out;
  std::string pd_out;
  int pd_klimit = 50;
};

int cmd_bench(const BenchFlags& flags_in) {
  BenchFlags flags = flags_in;
  StudyConfig cfg;
  cfg.gen = finish_gen_params(flags.gen);
  cfg.epsilon = cfg.gen.epsilon;
  cfg.count = flags.count;
  cfg.strategy = *strategy_from_name(flags.strategy);
  cfg.k_max = flags.k_max == 0 ? kUnboundedBranches : flags.k_max;
  cfg.time_budget_ms = flags.budget_ms;
  cfg.threads = flags.threads;

  const auto runs = run_complexity_study(cfg);

  json echo;
  echo["gen"] = io::gen_params_to_json(cfg.gen);
  echo["count"] = cfg.count;
  echo["strategy"] = flags.strategy;
  echo["k_max"] = cfg.k_max;
  std::ostringstream csv;
  csv << "# manifest " << io::make_manifest(cfg.gen.seed, echo).dump() << "\n";
  csv << io::kBenchCsvHeader << "\n";
  int unsolved = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    csv << io::bench_row(static_cast<int>(i), runs[i], cfg.gen.defenders,
                         cfg.gen.attackers, cfg.epsilon, cfg.strategy)
        << "\n";
    if (!runs[i].solved) ++unsolved;
  }
  io::write_file_atomic(flags.out, csv.str());

  if (!flags.pd_out.empty()) {
    StudyConfig pd_cfg = cfg;
    ConvergenceStats stats = run_convergence_study(pd_cfg, flags.pd_klimit);
    std::ostringstream pd_csv;
    pd_csv << "# manifest " << io::make_manifest(cfg.gen.seed, echo).dump()
           << "\n";
    pd_csv << io::kPdCsvHeader << "\n";
    for (std::size_t k = 0; k < stats.pd.size(); ++k) {
      pd_csv << flags.strategy << ',' << (k + 1) << ','
             << io::format_double(stats.mean_ub[k]) << ','
             << io::format_double(stats.pd[k]) << "\n";
    }
    io::write_file_atomic(flags.pd_out, pd_csv.str());
  }

  std::cout << "instances=" << runs.size() << " unsolved=" << unsolved << "\n";
  return unsolved == 0 ? kExitOk : kExitBudget;
}

struct PhaseFlags {
  std::string axis = "velocity-ratio";
  double from = 0.25;
  double to = 4.0;
  int points = 12;
  int per_point = 100;
  int n = 3;
  int m = 5;
  std::uint64_t seed = 0;
  std::uint64_t k_max = 20000;
  int threads = 1;
  std::string out;
};

int cmd_phase(const PhaseFlags& flags) {
  PhaseConfig cfg;
  cfg.axis = flags.axis == "velocity-ratio" ? PhaseAxis::kVelocityRatio
                                            : PhaseAxis::kTeamRatio;
  cfg.grid = linear_grid(flags.from, flags.to, flags.points);
  cfg.per_point = flags.per_point;
  cfg.base.defenders = flags.n;
  cfg.base.attackers = flags.m;
  cfg.base.seed = flags.seed;
  cfg.base.epsilon = 0.0;  // decision problem
  cfg.k_max = flags.k_max;
  cfg.threads = flags.threads;

  const auto points = run_phase_transition(cfg);

  json echo;
  echo["axis"] = flags.axis;
  echo["from"] = flags.from;
  echo["to"] = flags.to;
  echo["points"] = flags.points;
  echo["per_point"] = flags.per_point;
  echo["n"] = flags.n;
  echo["m"] = flags.m;
  echo["k_max"] = flags.k_max;
  std::ostringstream csv;
  csv << "# manifest " << io::make_manifest(flags.seed, echo).dump() << "\n";
  csv << io::kPhaseCsvHeader << "\n";
  for (const auto& p : points) {
    csv << io::phase_row(cfg.axis, p, flags.n, flags.m) << "\n";
  }
  io::write_file_atomic(flags.out, csv.str());

  int unknown = 0;
  for (const auto& p : points) unknown += p.unknown;
  std::cout << "points=" << points.size() << " unknown=" << unknown << "\n";
  return unknown == 0 ? kExitOk : kExitBudget;
}

struct SimFlags {
  int n = 8;
  int m = 4;
  int seeds = 200;
  std::uint64_t seed = 0;
  double rta_div = 15.0;  // rate_ta = rate_tc / rta_div; 0 = plan once
  double rate_tc = 24.0;
  double t_end = 60.0;
  double dt = 0.025;
  double beta = 3.5;
  double defender_radius = 0.75;
  double intercept_radius = 0.5;
  std::uint64_t solver_kmax = 64;
  int threads = 1;
  std::string out;
  std::string events_out;
};

int cmd_sim(const SimFlags& flags) {
  SimConfig cfg;
  cfg.rate_tc = flags.rate_tc;
  cfg.rate_ta = flags.rta_div > 0.0 ? flags.rate_tc / flags.rta_div : 0.0;
  cfg.rate_tg = flags.rate_tc;
  cfg.rate_i = cfg.rate_tg / 10.0;
  cfg.beta_enlarge = flags.beta;
  cfg.defender_radius = flags.defender_radius;
  cfg.intercept_radius = flags.intercept_radius;
  cfg.t_end = flags.t_end;
  cfg.base_dt = flags.dt;
  cfg.solver_k_max = flags.solver_kmax;
  validate(cfg);

  // Contested drill geometry: attackers close in from a band overlapping a
  // sparse defender ring, at the defenders' speed ceiling.
  GenParams base;
  base.defenders = flags.n;
  base.attackers = flags.m;
  base.attacker_radius = {5.0, 10.0};
  base.defender_radius = {3.5, 12.0};
  base.attacker_speed = {1.0, 1.0};
  base.defender_speed = {0.5, 1.0};

  std::vector<SimOutcome> outcomes(flags.seeds);
  std::vector<std::uint64_t> seeds(flags.seeds);
  {
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    const int workers =
        std::max(1, std::min(flags.threads, flags.seeds));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (int i = cursor.fetch_add(1); i < flags.seeds;
             i = cursor.fetch_add(1)) {
          GenParams params = base;
          params.seed = study_seed(flags.seed, i);
          seeds[i] = params.seed;
          outcomes[i] = simulate(generate(params), cfg, params.seed);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  json echo;
  echo["n"] = flags.n;
  echo["m"] = flags.m;
  echo["seeds"] = flags.seeds;
  echo["rta_div"] = flags.rta_div;
  echo["rate_tc"] = flags.rate_tc;
  echo["t_end"] = flags.t_end;
  echo["solver_kmax"] = flags.solver_kmax;
  std::ostringstream csv;
  csv << "# manifest " << io::make_manifest(flags.seed, echo).dump() << "\n";
  csv << io::kSimCsvHeader << "\n";
  double mean_entered = 0.0;
  for (int i = 0; i < flags.seeds; ++i) {
    csv << io::sim_row(seeds[i], flags.n, flags.m, cfg, outcomes[i]) << "\n";
    mean_entered += outcomes[i].fraction_entered;
  }
  mean_entered /= std::max(1, flags.seeds);
  io::write_file_atomic(flags.out, csv.str());

  if (!flags.events_out.empty()) {
    std::ostringstream all;
    for (int i = 0; i < flags.seeds; ++i) {
      all << io::sim_events_to_jsonl(outcomes[i], seeds[i]);
    }
    io::write_file_atomic(flags.events_out, all.str());
  }

  std::cout << "seeds=" << flags.seeds
            << " mean_fraction_entered=" << io::format_double(mean_entered)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime task-assignment solver and drill simulator"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  add_gen_options(gen, gen_flags);
  gen->add_option("--out", gen_flags.out, "Output instance JSON")->required();

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("--instance", solve_flags.instance_path)->required();
  solve_cmd->add_option("--out", solve_flags.out)->required();
  solve_cmd
      ->add_option("--strategy", solve_flags.strategy,
                   "bfs | dfs | astar-bfs | astar-dfs")
      ->check(CLI::IsMember({"bfs", "dfs", "astar-bfs", "astar-dfs"}));
  solve_cmd->add_option("--kmax", solve_flags.k_max,
                        "Branch budget (0 = unbounded)");
  double solve_eps = -1.0, solve_budget = -1.0;
  solve_cmd->add_option("--epsilon", solve_eps,
                        "Cost weight (default: instance value)");
  solve_cmd->add_option("--budget-ms", solve_budget, "Wall-clock budget");

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Solve batches of random instances");
  add_gen_options(bench, bench_flags.gen);
  bench->add_option("--count", bench_flags.count, "Instance count");
  bench
      ->add_option("--strategy", bench_flags.strategy,
                   "bfs | dfs | astar-bfs | astar-dfs")
      ->check(CLI::IsMember({"bfs", "dfs", "astar-bfs", "astar-dfs"}));
  bench->add_option("--kmax", bench_flags.k_max, "Branch budget (0 = unbounded)");
  double bench_budget = -1.0;
  bench->add_option("--budget-ms", bench_budget, "Per-instance wall budget");
  bench->add_option("--threads", bench_flags.threads, "Worker threads");
  bench->add_option("--out", bench_flags.out, "Per-instance CSV")->required();
  bench->add_option("--pd-out", bench_flags.pd_out,
                    "Optional convergence-curve CSV");
  bench->add_option("--pd-klimit", bench_flags.pd_klimit,
                    "Curve length for --pd-out");

  PhaseFlags phase_flags;
  auto* phase = app.add_subcommand("phase", "Decision-problem parameter sweep");
  phase
      ->add_option("--axis", phase_flags.axis, "velocity-ratio | team-ratio")
      ->check(CLI::IsMember({"velocity-ratio", "team-ratio"}));
  phase->add_option("--from", phase_flags.from, "Sweep start");
  phase->add_option("--to", phase_flags.to, "Sweep end");
  phase->add_option("--points", phase_flags.points, "Grid points");
  phase->add_option("--per-point", phase_flags.per_point, "Instances per point");
  phase->add_option("--n", phase_flags.n, "Defender count (velocity axis)");
  phase->add_option("--m", phase_flags.m, "Attacker count");
  phase->add_option("--seed", phase_flags.seed, "Base seed");
  phase->add_option("--kmax", phase_flags.k_max, "Per-instance branch budget");
  phase->add_option("--threads", phase_flags.threads, "Worker threads");
  phase->add_option("--out", phase_flags.out, "Sweep CSV")->required();

  SimFlags sim_flags;
  auto* sim = app.add_subcommand("sim", "Closed-loop replanning batches");
  sim->add_option("--n", sim_flags.n, "Defender count");
  sim->add_option("--m", sim_flags.m, "Attacker count");
  sim->add_option("--seeds", sim_flags.seeds, "Seed count");
  sim->add_option("--seed", sim_flags.seed, "Base seed");
  sim->add_option("--rta-div", sim_flags.rta_div,
                  "rate_ta = rate_tc / value (0 = plan once)");
  sim->add_option("--rtc", sim_flags.rate_tc, "Trajectory replan rate");
  sim->add_option("--t-end", sim_flags.t_end, "Horizon");
  sim->add_option("--dt", sim_flags.dt, "Integration step");
  sim->add_option("--beta", sim_flags.beta, "Avoidance inflation factor");
  sim->add_option("--defender-radius", sim_flags.defender_radius);
  sim->add_option("--intercept-radius", sim_flags.intercept_radius);
  sim->add_option("--kmax", sim_flags.solver_kmax, "Per-replan branch budget");
  sim->add_option("--threads", sim_flags.threads, "Worker threads");
  sim->add_option("--out", sim_flags.out, "Per-seed CSV")->required();
  sim->add_option("--events-out", sim_flags.events_out,
                  "Optional JSON-lines event log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_flags);
    if (*solve_cmd) {
      if (solve_eps >= 0.0) solve_flags.epsilon = solve_eps;
      if (solve_budget >= 0.0) solve_flags.budget_ms = solve_budget;
      return cmd_solve(solve_flags);
    }
    if (*bench) {
      if (bench_budget >= 0.0) bench_flags.budget_ms = bench_budget;
      return cmd_bench(bench_flags);
    }
    if (*phase) return cmd_phase(phase_flags);
    if (*sim) return cmd_sim(sim_flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
