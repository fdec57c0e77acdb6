#pragma once

#include <span>
#include <vector>

#include "agemap/model.hpp"

namespace agemap
{

// Spike emission times of one cluster, strictly increasing, in [0, window).
class SpikeTrain
{
  public:
    SpikeTrain() = default;
    explicit SpikeTrain(std::vector<double> times);

    // Sorts and drops exact duplicates before validating.
    static SpikeTrain from_unsorted(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }

  private:
    std::vector<double> times_;
};

struct VoltageSegment
{
    double voltage;  // volts
    double duration; // seconds
};

/**
 * Piecewise-constant operating voltage of one neuron circuit. Segment i holds
 * voltage V_i over [t_i, t_i + dt_i); the segments tile the span without gaps.
 */
class VoltageTrace
{
  public:
    VoltageTrace() = default;
    explicit VoltageTrace(std::vector<VoltageSegment> segments);

    static VoltageTrace constant(double voltage, double duration);

    std::span<const VoltageSegment> segments() const { return segments_; }
    std::size_t size() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }

    double span() const;
    double time_at(double voltage) const;

    VoltageTrace concat(const VoltageTrace& tail) const;
    // Merges neighbouring segments that share a voltage.
    VoltageTrace coalesced() const;

  private:
    std::vector<VoltageSegment> segments_;
};

/**
 * Each spike holds the charge pump at v_active for one pulse width; the rest
 * of the window is v_idle. Overlapping pulses form a single active segment and
 * a pulse running past the window end is truncated there.
 */
VoltageTrace build_voltage_trace(const SpikeTrain& train, const DeviceProfile& profile, double window);

} // namespace agemap
