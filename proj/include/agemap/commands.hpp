#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "agemap/calibration.hpp"
#include "agemap/config.hpp"
#include "agemap/fitness.hpp"
#include "agemap/oracle.hpp"
#include "agemap/pso.hpp"

namespace agemap
{

struct RunOptions
{
    std::optional<std::filesystem::path> out_dir; // overrides the config's output_dir
    std::optional<std::uint64_t> seed;            // overrides pso.seed
    bool plot_data{false};                        // also emit tidy plot_data.csv
};

std::unique_ptr<FitnessContext> make_context(const RunConfig& cfg,
                                             Objective objective = Objective::aging_time_product);

// optimize -> extract front -> select -> full aging report. No file output.
struct MapResult
{
    PsoConfig pso;
    OptimizeResult search;
    ParetoPoint selected;
    Fitness selected_fitness;
    AgingReport report;
};

MapResult run_mapping(const FitnessContext& ctx, const PsoConfig& pso, double epsilon);

struct CalibrateOutcome
{
    CalibrationResult calibration;
    Mapping baseline;
    double target_seconds{0.0};
};

// Writes calibrated_params.json, calibrated_config.json and calibration.json.
CalibrateOutcome cmd_calibrate(const RunConfig& cfg, const RunOptions& opts);

struct MapOutcome
{
    MapResult result;
    double wall_seconds{0.0};
};

// Writes mapping.json, front.json, front.csv, archive.csv, report.json,
// report.csv, summary.json and config.json; wall time goes to timing.txt.
MapOutcome cmd_map(const RunConfig& cfg, const RunOptions& opts);

enum class SweepAxis
{
    temperature,
    device_kind,
    num_tiles,
};

SweepAxis sweep_axis_from_string(const std::string& name);
const char* to_string(SweepAxis axis);

RunConfig apply_axis(const RunConfig& cfg, SweepAxis axis, const std::string& value);

struct SweepRow
{
    std::string value;
    Mapping mapping;
    double aging{0.0};
    double mttf{0.0};
    double tau{0.0};
    double lambda{0.0};
};

// Re-runs the full mapping per axis value with the shared seed; writes
// sweep_<axis>.csv with columns normalised to the first value.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<std::string>& values,
                                const RunOptions& opts);

struct StrategyRow
{
    std::string strategy;
    std::optional<Mapping> mapping; // absent for the random-median row
    double tau{0.0};
    double aging{0.0};
    double mttf{0.0};
    double lambda{0.0};
};

/**
 * reneu_pso: product fitness plus epsilon-constrained selection.
 * perf_only: the same swarm and seed on tau alone, reporting g_best.
 * random: medians over repaired random mappings.
 */
std::vector<StrategyRow> compare_strategies(const RunConfig& cfg);

// Writes compare.csv with ratios against perf_only.
std::vector<StrategyRow> cmd_compare(const RunConfig& cfg, const RunOptions& opts);

struct VerifyOutcome
{
    double feasible_mappings{0.0};
    oracle::Optimum optimum;
    ParetoFront oracle_front;
    OptimizeResult search;
    bool optimum_matched{false};
    bool front_matched{false};
};

// True when both fronts hold the same set of (tau, aging) points.
bool same_front_objectives(const ParetoFront& a, const ParetoFront& b);

VerifyOutcome run_verification(const FitnessContext& ctx, const PsoConfig& pso);

// Writes verify.json.
VerifyOutcome cmd_verify(const RunConfig& cfg, const RunOptions& opts);

} // namespace agemap
