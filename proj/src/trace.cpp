#include "agemap/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace agemap
{

SpikeTrain::SpikeTrain(std::vector<double> times) : times_(std::move(times))
{
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] >= 0.0)) {
            throw std::invalid_argument("spike times must be non-negative");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("spike times must be strictly increasing");
        }
    }
}

SpikeTrain SpikeTrain::from_unsorted(std::vector<double> times)
{
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return SpikeTrain(std::move(times));
}

VoltageTrace::VoltageTrace(std::vector<VoltageSegment> segments) : segments_(std::move(segments))
{
    for (const auto& s : segments_) {
        if (!(s.duration > 0.0)) {
            throw std::invalid_argument("voltage segment durations must be positive");
        }
        if (!(s.voltage > 0.0)) {
            throw std::invalid_argument("voltage segment voltages must be positive");
        }
    }
}

VoltageTrace VoltageTrace::constant(double voltage, double duration)
{
    return VoltageTrace({{voltage, duration}});
}

double VoltageTrace::span() const
{
    double total = 0.0;
    for (const auto& s : segments_) {
        total += s.duration;
    }
    return total;
}

double VoltageTrace::time_at(double voltage) const
{
    double total = 0.0;
    for (const auto& s : segments_) {
        if (s.voltage == voltage) {
            total += s.duration;
        }
    }
    return total;
}

VoltageTrace VoltageTrace::concat(const VoltageTrace& tail) const
{
    std::vector<VoltageSegment> out = segments_;
    out.insert(out.end(), tail.segments_.begin(), tail.segments_.end());
    return VoltageTrace(std::move(out));
}

VoltageTrace VoltageTrace::coalesced() const
{
    std::vector<VoltageSegment> out;
    for (const auto& s : segments_) {
        if (!out.empty() && out.back().voltage == s.voltage) {
            out.back().duration += s.duration;
        } else {
            out.push_back(s);
        }
    }
    return VoltageTrace(std::move(out));
}

VoltageTrace build_voltage_trace(const SpikeTrain& train, const DeviceProfile& profile, double window)
{
    if (!(window > 0.0)) {
        throw std::invalid_argument("trace window must be positive");
    }
    const double width = profile.spike_pulse_width;

    // Segments are recorded by absolute start time; durations are the
    // differences of consecutive starts so they telescope to the window.
    std::vector<double> starts;
    std::vector<double> volts;
    double cursor = 0.0;
    auto emit = [&](double voltage, double until) {
        if (until <= cursor) {
            return;
        }
        if (volts.empty() || volts.back() != voltage) {
            starts.push_back(cursor);
            volts.push_back(voltage);
        }
        cursor = until;
    };

    const auto& times = train.times();
    std::size_t i = 0;
    while (i < times.size()) {
        if (times[i] >= window) {
            throw std::invalid_argument("spike time outside the workload window");
        }
        double start = times[i];
        double end = std::min(start + width, window);
        // Union of overlapping pulses.
        ++i;
        while (i < times.size() && times[i] <= end) {
            end = std::min(std::max(end, times[i] + width), window);
            ++i;
        }
        emit(profile.v_idle, start);
        emit(profile.v_active, end);
    }
    emit(profile.v_idle, window);

    std::vector<VoltageSegment> segments(starts.size());
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const double next = k + 1 < starts.size() ? starts[k + 1] : window;
        segments[k] = {volts[k], next - starts[k]};
    }
    return VoltageTrace(std::move(segments));
}

} // namespace agemap
