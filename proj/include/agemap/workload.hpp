#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agemap/model.hpp"
#include "agemap/trace.hpp"

namespace agemap
{

// A clustered network together with the spike train of every cluster.
struct Workload
{
    ClusteredSnn snn;
    std::vector<SpikeTrain> trains; // one per cluster, by position
};

enum class ShapeKind
{
    chain,       // c0 -> c1 -> ... -> c(k-1)
    feedforward, // consecutive layers fully connected
    reservoir,   // input layer -> recurrent pool (with self-loops) -> output layer
    random,      // each ordered pair (i < j) connected with edge_probability
};

const char* to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);

struct WorkloadShape
{
    ShapeKind kind{ShapeKind::feedforward};
    // Clusters per layer (feedforward/reservoir) or a single entry holding
    // the cluster count (chain/random).
    std::vector<int> layers{4};
    int neurons_per_cluster{64};
    double edge_probability{0.5};
    // Per-cluster rate multiplier drawn uniformly from [1 - spread, 1 + spread].
    double rate_spread{0.0};

    int cluster_count() const;
};

/**
 * Seeded Poisson spike trains on a generated cluster graph. Every edge's
 * spike_count equals the number of spikes its source cluster emits.
 */
Workload generate_poisson_workload(const WorkloadShape& shape, double rate, double window, std::uint64_t seed);

// Recomputes edge spike counts from the source trains.
void sync_edge_counts(Workload& workload);

} // namespace agemap
