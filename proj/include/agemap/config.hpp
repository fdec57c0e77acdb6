#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "agemap/aging.hpp"
#include "agemap/mapping.hpp"
#include "agemap/perf.hpp"
#include "agemap/pso.hpp"
#include "agemap/workload.hpp"

namespace agemap
{

// Either explicit clusters/edges/spike trains or a seeded Poisson generator.
struct WorkloadSpec
{
    struct Generated
    {
        WorkloadShape shape;
        double rate{100.0};
        std::uint64_t seed{1};
    };

    double window{1.0};
    std::optional<Workload> explicit_workload;
    std::optional<Generated> generated;

    Workload build() const;
};

// Swarm settings; missing particle/iteration counts are sized from the workload.
struct PsoSpec
{
    std::optional<int> particles;
    std::optional<int> iterations;
    double phi1{2.0};
    double phi2{2.0};
    std::uint64_t seed{1};
    double v_clamp{4.0};

    PsoConfig resolve(std::size_t num_clusters) const;
};

struct CalibrationSpec
{
    double target_mttf_years{2.0};
    std::optional<Mapping> baseline; // first-fit when absent
};

struct RunConfig
{
    HardwareConfig hardware;
    AgingParams aging;
    PerfParams perf;
    PsoSpec pso;
    WorkloadSpec workload;
    CalibrationSpec calibration;
    int random_samples{21};
    double selection_epsilon{0.05};
    std::string output_dir{"out"};
};

// Strict parse: unknown keys and missing required fields raise ConfigError
// naming the offending path.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const AgingParams& p);
nlohmann::json to_json(const HardwareConfig& hw);

AgingParams parse_aging_params(const nlohmann::json& doc, const std::string& path = "aging");

} // namespace agemap
