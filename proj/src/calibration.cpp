#include "agemap/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "agemap/error.hpp"

namespace agemap
{

namespace
{

double baseline_mttf(const Workload& workload, const Mapping& baseline, const HardwareConfig& hw,
                     const AgingParams& p)
{
    HardwareAgingModel model(workload, hw, p);
    const double aging = model.hardware_aging(baseline);
    return mttf_from_aging(aging, workload.snn.workload_window, p.beta());
}

} // namespace

CalibrationResult calibrate_baseline(const Workload& workload, const Mapping& baseline, const HardwareConfig& hw,
                                     const AgingParams& p, double target_mttf, double rel_tol)
{
    if (!(target_mttf > 0.0) || !std::isfinite(target_mttf)) {
        throw std::invalid_argument("calibration target must be a positive finite MTTF");
    }
    require_valid_mapping(baseline, workload.snn.size(), hw);
    {
        HardwareAgingModel probe(workload, hw, p);
        if (!probe.has_spikes()) {
            throw InfeasibleError("calibration infeasible: baseline workload has no spikes");
        }
    }

    CalibrationResult result;
    auto residual = [&](double log_scale) {
        ++result.evaluations;
        const double mttf = baseline_mttf(workload, baseline, hw, p.scaled(std::exp(log_scale)));
        if (!std::isfinite(mttf)) {
            throw InfeasibleError("calibration infeasible: baseline aging is zero");
        }
        return std::log(mttf / target_mttf);
    };

    const double f0 = residual(0.0);
    if (std::abs(f0) <= rel_tol) {
        result.params = p;
        result.achieved_mttf = target_mttf * std::exp(f0);
        result.unchanged = true;
        return result;
    }

    // MTTF is close to linear in the scale, so -f0 is a good first guess.
    double lo = 0.0, f_lo = f0;
    double hi = -f0, f_hi = residual(hi);
    double step = std::abs(f0);
    while (f_lo * f_hi > 0.0) {
        if (result.evaluations > 200) {
            throw InfeasibleError("calibration failed to bracket the target MTTF");
        }
        step *= 2.0;
        lo = hi;
        f_lo = f_hi;
        hi = f0 > 0.0 ? hi - step : hi + step;
        f_hi = residual(hi);
    }

    // Illinois-modified regula falsi.
    double x = hi, fx = f_hi;
    int side = 0;
    for (int iter = 0; iter < 200 && std::abs(fx) > rel_tol; ++iter) {
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        fx = residual(x);
        if (fx * f_hi > 0.0) {
            hi = x;
            f_hi = fx;
            if (side == -1) {
                f_lo *= 0.5;
            }
            side = -1;
        } else {
            lo = x;
            f_lo = fx;
            if (side == 1) {
                f_hi *= 0.5;
            }
            side = 1;
        }
    }

    result.scale = std::exp(x);
    result.params = p.scaled(result.scale);
    result.achieved_mttf = target_mttf * std::exp(fx);
    return result;
}

} // namespace agemap
