#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "agemap/mapping.hpp"
#include "agemap/model.hpp"
#include "agemap/rng.hpp"
#include "agemap/trace.hpp"
#include "agemap/workload.hpp"

namespace agemap::gen
{

inline VoltageTrace random_trace(Rng& rng, int min_segments = 1, int max_segments = 12, double v_lo = 0.8,
                                 double v_hi = 3.5)
{
    const int n = min_segments + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_segments - min_segments + 1)));
    std::vector<VoltageSegment> segs;
    for (int i = 0; i < n; ++i) {
        // Durations spread over several decades.
        const double d = std::pow(10.0, rng.uniform(-5.0, 1.0));
        segs.push_back({rng.uniform(v_lo, v_hi), d});
    }
    return VoltageTrace(std::move(segs));
}

inline SpikeTrain random_train(Rng& rng, double window, int max_spikes)
{
    std::vector<double> t;
    const auto n = rng.below(static_cast<std::uint64_t>(max_spikes + 1));
    for (std::uint64_t i = 0; i < n; ++i) {
        t.push_back(rng.uniform() * window);
    }
    return SpikeTrain::from_unsorted(std::move(t));
}

// Random directed graph over k clusters, Poisson-ish trains, counts synced.
inline Workload random_workload(Rng& rng, int k, double window = 1.0, int max_spikes = 150, int neurons = 64)
{
    Workload w;
    w.snn.workload_window = window;
    for (int i = 0; i < k; ++i) {
        w.snn.clusters.push_back({i, neurons, static_cast<long>(neurons) * neurons});
        w.trains.push_back(random_train(rng, window, max_spikes));
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i != j && rng.uniform() < 0.4) {
                w.snn.edges.push_back({i, j, 0});
            }
        }
    }
    sync_edge_counts(w);
    return w;
}

// Uniform over feasible mappings by rejection from random assignments.
inline Mapping random_mapping(Rng& rng, std::size_t clusters, const HardwareConfig& hw)
{
    for (;;) {
        Mapping m;
        std::vector<int> load(static_cast<std::size_t>(hw.num_tiles()), 0);
        bool ok = true;
        for (std::size_t c = 0; c < clusters; ++c) {
            const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(hw.num_tiles())));
            if (++load[static_cast<std::size_t>(t)] > hw.tile_capacity) {
                ok = false;
                break;
            }
            m.assignment.push_back(t);
        }
        if (ok) {
            return m;
        }
    }
}

inline HardwareConfig mesh(int w, int h, int capacity = 1)
{
    HardwareConfig hw;
    hw.mesh_width = w;
    hw.mesh_height = h;
    hw.tile_capacity = capacity;
    return hw;
}

} // namespace agemap::gen
