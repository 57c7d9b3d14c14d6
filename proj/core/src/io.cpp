#include "roboflag/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace roboflag::io {

using nlohmann::json;

namespace {

std::string iso8601_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

json make_manifest(std::uint64_t seed, const json& config_echo,
                   bool with_timestamp) {
  json m;
  m["tool_version"] = kToolVersion;
  m["generator_algorithm"] = kGeneratorAlgorithm;
  m["seed"] = seed;
  m["config"] = config_echo;
  if (with_timestamp) m["created_at"] = iso8601_now();
  return m;
}

json instance_to_json(const InstanceSpec& inst) {
  json j;
  j["defense_zone_radius"] = inst.field.defense_zone_radius;
  j["epsilon"] = inst.epsilon;
  j["sample_time"] = inst.grid.sample_time;
  j["defenders"] = json::array();
  for (const auto& d : inst.defenders) {
    j["defenders"].push_back(
        {{"x", d.x}, {"y", d.y}, {"vx", d.vx}, {"vy", d.vy}});
  }
  j["attackers"] = json::array();
  for (const auto& a : inst.attackers) {
    j["attackers"].push_back(
        {{"p", a.p}, {"q", a.q}, {"vp", a.vp}, {"vq", a.vq}});
  }
  return j;
}

InstanceSpec instance_from_json(const json& j) {
  InstanceSpec inst;
  try {
    inst.field.defense_zone_radius = j.at("defense_zone_radius").get<double>();
    inst.epsilon = j.at("epsilon").get<double>();
    inst.grid.sample_time = j.at("sample_time").get<double>();
    for (const auto& d : j.at("defenders")) {
      inst.defenders.push_back(DefenderState{
          d.at("x").get<double>(), d.at("y").get<double>(),
          d.at("vx").get<double>(), d.at("vy").get<double>()});
    }
    for (const auto& a : j.at("attackers")) {
      AttackerTrack track;
      track.p = a.at("p").get<double>();
      track.q = a.at("q").get<double>();
      track.vp = a.at("vp").get<double>();
      track.vq = a.at("vq").get<double>();
      inst.attackers.push_back(track);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  validate(inst);
  return inst;
}

json gen_params_to_json(const GenParams& params) {
  json j;
  j["defenders"] = params.defenders;
  j["attackers"] = params.attackers;
  j["attacker_radius"] = {params.attacker_radius.lo, params.attacker_radius.hi};
  j["attacker_speed"] = {params.attacker_speed.lo, params.attacker_speed.hi};
  j["defender_radius"] = {params.defender_radius.lo, params.defender_radius.hi};
  j["defender_speed"] = {params.defender_speed.lo, params.defender_speed.hi};
  j["defense_zone_radius"] = params.defense_zone_radius;
  j["heading"] = params.heading == AttackerHeading::kTowardOrigin
                     ? "toward-origin"
                     : "uniform";
  j["epsilon"] = params.epsilon;
  j["sample_time"] = params.sample_time;
  j["seed"] = params.seed;
  return j;
}

json solver_result_to_json(const SolverResult& result,
                           const SolverConfig& config, int n) {
  json j;
  j["strategy"] = strategy_name(config.strategy);
  j["k_max"] = config.k_max;
  j["epsilon"] = config.epsilon;
  json r;
  r["best_assignment"] = {{"delta", result.best.assignment.delta},
                          {"beta", result.best.assignment.beta}};
  r["sequences"] = to_sequences(result.best.assignment, n);
  r["j_ub_best"] = result.j_ub_best;
  r["branches_explored"] = result.branches_explored;
  r["proven_optimal"] = result.proven_optimal;
  r["pruned"] = result.pruned;
  r["expanded"] = result.expanded;
  json trace = json::array();
  for (const auto& [k, cost] : result.ub_trace) {
    trace.push_back({k, cost});
  }
  r["ub_trace"] = trace;
  r["gammas"] = result.best.gamma;
  r["completion_times"] = result.best.completion_times;
  j["result"] = r;
  return j;
}

std::string sim_events_to_jsonl(const SimOutcome& outcome,
                                std::uint64_t seed) {
  std::ostringstream os;
  for (const auto& ev : outcome.events) {
    json j;
    j["seed"] = seed;
    j["t"] = ev.t;
    j["type"] = ev.type;
    if (ev.defender >= 0) j["defender"] = ev.defender;
    if (ev.attacker >= 0) j["attacker"] = ev.attacker;
    if (!ev.detail.empty()) j["detail"] = ev.detail;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::string format_double(double v) {
  // Shortest decimal that parses back to the same bits.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string encode_trace(
    const std::vector<std::pair<std::uint64_t, double>>& trace) {
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) os << ';';
    os << trace[i].first << ':' << format_double(trace[i].second);
  }
  return os.str();
}

std::vector<std::pair<std::uint64_t, double>> decode_trace(
    const std::string& encoded) {
  std::vector<std::pair<std::uint64_t, double>> trace;
  std::istringstream is(encoded);
  std::string item;
  while (std::getline(is, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("trace: missing ':' in " + item);
    }
    trace.push_back({std::stoull(item.substr(0, colon)),
                     std::stod(item.substr(colon + 1))});
  }
  return trace;
}

std::string bench_row(int index, const InstanceRun& run, int n, int m,
                      double epsilon, Strategy strategy) {
  std::ostringstream os;
  os << index << ',' << run.seed << ',' << n << ',' << m << ','
     << format_double(epsilon) << ',' << strategy_name(strategy) << ','
     << (run.solved ? 1 : 0) << ',' << format_double(run.j_opt) << ','
     << run.branches_to_converge << ',' << run.branches_to_prove << ','
     << format_double(run.wall_ms) << ',' << encode_trace(run.ub_trace);
  return os.str();
}

std::string phase_row(PhaseAxis axis, const PhasePoint& point, int n, int m) {
  std::ostringstream os;
  os << (axis == PhaseAxis::kVelocityRatio ? "velocity-ratio" : "team-ratio")
     << ',' << format_double(point.control) << ','
     << (axis == PhaseAxis::kTeamRatio
             ? static_cast<int>(std::lround(point.control * m))
             : n)
     << ',' << m << ',' << point.instances << ',' << point.yes << ','
     << point.no << ',' << point.unknown << ','
     << format_double(point.fraction_yes) << ','
     << format_double(point.mean_branches);
  return os.str();
}

std::string sim_row(std::uint64_t seed, int n, int m, const SimConfig& cfg,
                    const SimOutcome& outcome) {
  std::ostringstream os;
  os << seed << ',' << n << ',' << m << ',' << format_double(cfg.rate_ta)
     << ',' << format_double(cfg.rate_tc) << ',' << format_double(cfg.rate_tg)
     << ',' << format_double(cfg.rate_i) << ',' << outcome.entered << ','
     << outcome.intercepted << ',' << outcome.active_at_end << ','
     << format_double(outcome.fraction_entered) << ',' << outcome.ta_solves
     << ',' << outcome.solver_branches;
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp);
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace roboflag::io
