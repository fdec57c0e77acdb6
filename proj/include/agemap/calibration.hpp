#pragma once

#include "agemap/aging.hpp"

namespace agemap
{

constexpr double seconds_per_year = 365.25 * 24.0 * 3600.0;

struct CalibrationResult
{
    AgingParams params;
    double achieved_mttf{0.0}; // seconds
    double scale{1.0};         // applied lifetime scale (see AgingParams::scaled)
    int evaluations{0};
    bool unchanged{false};
};

/**
 * Rescales the lifetime constants so that the baseline mapping reaches
 * target_mttf. MTTF is monotone in the scale, so a bracketed 1-D root search
 * on log(scale) is enough. Throws InfeasibleError when the workload has no
 * spikes or the baseline aging vanishes.
 */
CalibrationResult calibrate_baseline(const Workload& workload, const Mapping& baseline, const HardwareConfig& hw,
                                     const AgingParams& p, double target_mttf, double rel_tol = 1e-9);

} // namespace agemap
