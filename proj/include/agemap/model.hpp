#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace agemap
{

struct Cluster
{
    int id{0};
    int neuron_count{0};
    long synapse_count{0};
};

// Directed spike flow between two clusters. Self-loops are allowed.
struct Edge
{
    int src_cluster{0};
    int dst_cluster{0};
    long spike_count{0};
};

/**
 * A partitioned spiking network: every cluster is meant to fit on one
 * crossbar, and edges carry the number of spikes sent per workload window.
 * Clusters are addressed by position internally; `id` is the external name.
 */
struct ClusteredSnn
{
    std::vector<Cluster> clusters;
    std::vector<Edge> edges;
    double workload_window{1.0}; // seconds

    std::size_t size() const { return clusters.size(); }

    // Position of the cluster with the given id, if any.
    std::optional<std::size_t> index_of(int id) const;

    // Edges resolved to cluster positions. Dangling edges are skipped.
    struct IndexedEdge
    {
        std::size_t src;
        std::size_t dst;
        long spike_count;
    };
    std::vector<IndexedEdge> indexed_edges() const;
};

enum class DeviceKind
{
    diode_1D1R,
    transistor_1T1R,
};

const char* to_string(DeviceKind kind);
DeviceKind device_kind_from_string(const std::string& name);

// Charge pump voltages seen by an input-neuron circuit.
struct DeviceProfile
{
    DeviceKind kind{DeviceKind::diode_1D1R};
    double v_active{3.0};
    double v_idle{1.8};
    double spike_pulse_width{100e-6};

    // 1D-1R: 3.0 V read, 1.8 V bias. 1T-1R: 1.8 V spike, 1.2 V idle.
    static DeviceProfile defaults(DeviceKind kind);

    void check() const;
};

struct HardwareConfig
{
    int mesh_width{2};
    int mesh_height{2};
    int crossbar_dim{128};
    int tile_capacity{1};
    double temperature{300.0}; // kelvin
    DeviceProfile device{};

    int num_tiles() const { return mesh_width * mesh_height; }
    int total_capacity() const { return num_tiles() * tile_capacity; }
    int hops(int tile_a, int tile_b) const;

    // Closest-to-square factorization of a tile count into a mesh.
    static std::pair<int, int> mesh_for(int num_tiles);

    void check() const;
};

enum class ViolationKind
{
    crossbar_overflow,
    fan_in_overflow,
    empty_cluster,
    dangling_edge,
    negative_spike_count,
    duplicate_cluster_id,
    bad_window,
};

struct Violation
{
    ViolationKind kind;
    std::string message;
};

const char* to_string(ViolationKind kind);

// Checks crossbar fit and edge references. Never throws on bad data.
std::vector<Violation> validate_snn(const ClusteredSnn& snn, const HardwareConfig& hw);

} // namespace agemap
