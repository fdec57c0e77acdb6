#include "agemap/workload.hpp"

#include <numeric>
#include <stdexcept>

#include "agemap/rng.hpp"

namespace agemap
{

const char* to_string(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::chain:
        return "chain";
    case ShapeKind::feedforward:
        return "feedforward";
    case ShapeKind::reservoir:
        return "reservoir";
    case ShapeKind::random:
        return "random";
    }
    return "unknown";
}

ShapeKind shape_kind_from_string(const std::string& name)
{
    if (name == "chain") {
        return ShapeKind::chain;
    }
    if (name == "feedforward") {
        return ShapeKind::feedforward;
    }
    if (name == "reservoir") {
        return ShapeKind::reservoir;
    }
    if (name == "random") {
        return ShapeKind::random;
    }
    throw std::invalid_argument("unknown workload shape '" + name + "'");
}

int WorkloadShape::cluster_count() const
{
    return std::accumulate(layers.begin(), layers.end(), 0);
}

namespace
{

void check_shape(const WorkloadShape& shape)
{
    if (shape.layers.empty()) {
        throw std::invalid_argument("workload shape needs at least one layer");
    }
    for (int n : shape.layers) {
        if (n < 1) {
            throw std::invalid_argument("workload layers must be non-empty");
        }
    }
    if (shape.kind == ShapeKind::reservoir && shape.layers.size() != 3) {
        throw std::invalid_argument("reservoir shape takes exactly three layers (input, pool, output)");
    }
    if ((shape.kind == ShapeKind::chain || shape.kind == ShapeKind::random) && shape.layers.size() != 1) {
        throw std::invalid_argument("chain and random shapes take a single cluster count");
    }
    if (shape.neurons_per_cluster < 1) {
        throw std::invalid_argument("neurons_per_cluster must be >= 1");
    }
    if (shape.rate_spread < 0.0 || shape.rate_spread > 1.0) {
        throw std::invalid_argument("rate_spread must lie in [0, 1]");
    }
}

std::vector<std::pair<int, int>> layer_edges(const WorkloadShape& shape, Rng& rng)
{
    std::vector<std::pair<int, int>> edges;
    std::vector<int> first(shape.layers.size() + 1, 0);
    for (std::size_t l = 0; l < shape.layers.size(); ++l) {
        first[l + 1] = first[l] + shape.layers[l];
    }
    auto connect_layers = [&](std::size_t a, std::size_t b) {
        for (int i = first[a]; i < first[a + 1]; ++i) {
            for (int j = first[b]; j < first[b + 1]; ++j) {
                edges.emplace_back(i, j);
            }
        }
    };

    const int k = shape.cluster_count();
    switch (shape.kind) {
    case ShapeKind::chain:
        for (int i = 0; i + 1 < k; ++i) {
            edges.emplace_back(i, i + 1);
        }
        break;
    case ShapeKind::feedforward:
        for (std::size_t l = 0; l + 1 < shape.layers.size(); ++l) {
            connect_layers(l, l + 1);
        }
        break;
    case ShapeKind::reservoir:
        connect_layers(0, 1);
        connect_layers(1, 1);
        connect_layers(1, 2);
        break;
    case ShapeKind::random:
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (rng.uniform() < shape.edge_probability) {
                    edges.emplace_back(i, j);
                }
            }
        }
        break;
    }
    return edges;
}

} // namespace

Workload generate_poisson_workload(const WorkloadShape& shape, double rate, double window, std::uint64_t seed)
{
    check_shape(shape);
    if (!(rate >= 0.0)) {
        throw std::invalid_argument("spike rate must be >= 0");
    }
    if (!(window > 0.0)) {
        throw std::invalid_argument("workload window must be positive");
    }

    Rng rng(seed);
    Workload w;
    const int k = shape.cluster_count();
    w.snn.workload_window = window;
    for (int i = 0; i < k; ++i) {
        const long n = shape.neurons_per_cluster;
        w.snn.clusters.push_back({i, shape.neurons_per_cluster, n * n});
    }
    for (auto [s, d] : layer_edges(shape, rng)) {
        w.snn.edges.push_back({s, d, 0});
    }

    std::vector<double> rates(k, rate);
    for (int i = 0; i < k; ++i) {
        rates[i] = rate * (1.0 + shape.rate_spread * rng.uniform(-1.0, 1.0));
    }

    w.trains.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::vector<double> times;
        if (rates[i] > 0.0) {
            double t = rng.exponential(rates[i]);
            while (t < window) {
                if (times.empty() || t > times.back()) {
                    times.push_back(t);
                }
                t += rng.exponential(rates[i]);
            }
        }
        w.trains.emplace_back(std::move(times));
    }
    sync_edge_counts(w);
    return w;
}

void sync_edge_counts(Workload& workload)
{
    for (auto& e : workload.snn.edges) {
        auto s = workload.snn.index_of(e.src_cluster);
        e.spike_count = (s && *s < workload.trains.size()) ? static_cast<long>(workload.trains[*s].size()) : 0;
    }
}

} // namespace agemap
