#pragma once

#include "agemap/mapping.hpp"
#include "agemap/model.hpp"

namespace agemap
{

struct PerfParams
{
    double spike_latency{1e-6}; // seconds per spike through a crossbar
    double hop_latency{1e-7};   // seconds per mesh hop per spike
    bool tile_parallelism{true};

    void check() const;
};

/**
 * Surrogate execution time of a mapping:
 *
 *    tau = max_tile(spikes into the tile's clusters * spike_latency)
 *        + sum_edges(spike_count * hops(src, dst) * hop_latency)
 *
 * Without tile parallelism the compute term sums over tiles instead.
 * Only relative values are meaningful.
 */
double execution_time(const ClusteredSnn& snn, const Mapping& mapping, const HardwareConfig& hw, const PerfParams& p);

} // namespace agemap
