#include "agemap/perf.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace agemap
{

void PerfParams::check() const
{
    if (!(spike_latency > 0.0) || !(hop_latency > 0.0)) {
        throw std::invalid_argument("perf latencies must be positive");
    }
}

double execution_time(const ClusteredSnn& snn, const Mapping& mapping, const HardwareConfig& hw, const PerfParams& p)
{
    require_valid_mapping(mapping, snn.size(), hw);

    const auto edges = snn.indexed_edges();
    std::vector<long> processed(hw.num_tiles(), 0);
    long hop_spikes = 0;
    for (const auto& e : edges) {
        const int src = mapping.assignment[e.src];
        const int dst = mapping.assignment[e.dst];
        processed[dst] += e.spike_count;
        hop_spikes += e.spike_count * hw.hops(src, dst);
    }

    double compute = 0.0;
    if (p.tile_parallelism) {
        compute = static_cast<double>(*std::max_element(processed.begin(), processed.end())) * p.spike_latency;
    } else {
        long total = 0;
        for (long n : processed) {
            total += n;
        }
        compute = static_cast<double>(total) * p.spike_latency;
    }
    return compute + static_cast<double>(hop_spikes) * p.hop_latency;
}

} // namespace agemap
