#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "roboflag/experiments.hpp"
#include "roboflag/generator.hpp"
#include "roboflag/instance.hpp"
#include "roboflag/replanning.hpp"
#include "roboflag/solver.hpp"

namespace roboflag::io {

inline constexpr const char* kToolVersion = "0.1.0";

// Provenance block embedded in every structured output. created_at is the
// only field allowed to differ between identical runs.
nlohmann::json make_manifest(std::uint64_t seed,
                             const nlohmann::json& config_echo,
                             bool with_timestamp = true);

// Instance file schema (field names are fixed):
// {"defense_zone_radius", "epsilon", "sample_time",
//  "defenders":[{"x","y","vx","vy"}], "attackers":[{"p","q","vp","vq"}]}
nlohmann::json instance_to_json(const InstanceSpec& inst);
InstanceSpec instance_from_json(const nlohmann::json& j);

nlohmann::json gen_params_to_json(const GenParams& params);

nlohmann::json solver_result_to_json(const SolverResult& result,
                                     const SolverConfig& config, int n);

// One JSON-lines record per simulation event.
std::string sim_events_to_jsonl(const SimOutcome& outcome, std::uint64_t seed);

// CSV headers (fixed column order).
inline constexpr const char* kBenchCsvHeader =
    "index,seed,n,m,epsilon,strategy,solved,j_opt,branches_to_converge,"
    "branches_to_prove,wall_ms,ub_trace";
inline constexpr const char* kPdCsvHeader = "strategy,k,mean_ub,pd_percent";
inline constexpr const char* kPhaseCsvHeader =
    "axis,control,n,m,instances,yes,no,unknown,fraction_yes,mean_branches";
inline constexpr const char* kSimCsvHeader =
    "seed,n,m,rate_ta,rate_tc,rate_tg,rate_i,entered,intercepted,"
    "active_at_end,fraction_entered,ta_solves,solver_branches";

std::string format_double(double v);  // shortest round-trip decimal

std::string bench_row(int index, const InstanceRun& run, int n, int m,
                      double epsilon, Strategy strategy);
std::string phase_row(PhaseAxis axis, const PhasePoint& point, int n, int m);
std::string sim_row(std::uint64_t seed, int n, int m, const SimConfig& cfg,
                    const SimOutcome& outcome);

// "k:cost;k:cost" encoding used in the bench ub_trace column.
std::string encode_trace(
    const std::vector<std::pair<std::uint64_t, double>>& trace);
std::vector<std::pair<std::uint64_t, double>> decode_trace(
    const std::string& encoded);

// Write-then-rename so partially written files are never observed.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace roboflag::io
