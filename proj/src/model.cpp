#include "agemap/model.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace agemap
{

std::optional<std::size_t> ClusteredSnn::index_of(int id) const
{
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<ClusteredSnn::IndexedEdge> ClusteredSnn::indexed_edges() const
{
    std::vector<IndexedEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
        auto s = index_of(e.src_cluster);
        auto d = index_of(e.dst_cluster);
        if (s && d) {
            out.push_back({*s, *d, e.spike_count});
        }
    }
    return out;
}

const char* to_string(DeviceKind kind)
{
    switch (kind) {
    case DeviceKind::diode_1D1R:
        return "diode_1D1R";
    case DeviceKind::transistor_1T1R:
        return "transistor_1T1R";
    }
    return "unknown";
}

DeviceKind device_kind_from_string(const std::string& name)
{
    if (name == "diode_1D1R" || name == "diode") {
        return DeviceKind::diode_1D1R;
    }
    if (name == "transistor_1T1R" || name == "transistor") {
        return DeviceKind::transistor_1T1R;
    }
    throw std::invalid_argument("unknown device kind '" + name + "'");
}

DeviceProfile DeviceProfile::defaults(DeviceKind kind)
{
    DeviceProfile p;
    p.kind = kind;
    if (kind == DeviceKind::transistor_1T1R) {
        p.v_active = 1.8;
        p.v_idle = 1.2;
    } else {
        p.v_active = 3.0;
        p.v_idle = 1.8;
    }
    return p;
}

void DeviceProfile::check() const
{
    if (!(v_idle > 0.0) || !(v_active > v_idle)) {
        throw std::invalid_argument("device profile requires v_active > v_idle > 0");
    }
    if (!(spike_pulse_width > 0.0)) {
        throw std::invalid_argument("device profile requires spike_pulse_width > 0");
    }
}

int HardwareConfig::hops(int tile_a, int tile_b) const
{
    const int ax = tile_a % mesh_width, ay = tile_a / mesh_width;
    const int bx = tile_b % mesh_width, by = tile_b / mesh_width;
    return std::abs(ax - bx) + std::abs(ay - by);
}

std::pair<int, int> HardwareConfig::mesh_for(int num_tiles)
{
    if (num_tiles < 1) {
        throw std::invalid_argument("num_tiles must be >= 1");
    }
    int height = static_cast<int>(std::sqrt(static_cast<double>(num_tiles)));
    while (num_tiles % height != 0) {
        --height;
    }
    return {num_tiles / height, height};
}

void HardwareConfig::check() const
{
    if (mesh_width < 1 || mesh_height < 1) {
        throw std::invalid_argument("mesh dimensions must be >= 1");
    }
    if (crossbar_dim < 1) {
        throw std::invalid_argument("crossbar_dim must be >= 1");
    }
    if (tile_capacity < 1) {
        throw std::invalid_argument("tile_capacity must be >= 1");
    }
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("temperature must be > 0 K");
    }
    device.check();
}

const char* to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::crossbar_overflow:
        return "crossbar overflow";
    case ViolationKind::fan_in_overflow:
        return "fan-in overflow";
    case ViolationKind::empty_cluster:
        return "empty cluster";
    case ViolationKind::dangling_edge:
        return "dangling edge";
    case ViolationKind::negative_spike_count:
        return "negative spike count";
    case ViolationKind::duplicate_cluster_id:
        return "duplicate cluster id";
    case ViolationKind::bad_window:
        return "bad workload window";
    }
    return "unknown";
}

std::vector<Violation> validate_snn(const ClusteredSnn& snn, const HardwareConfig& hw)
{
    std::vector<Violation> out;
    auto add = [&](ViolationKind kind, const std::string& msg) { out.push_back({kind, msg}); };

    if (!(snn.workload_window > 0.0)) {
        add(ViolationKind::bad_window, "workload window must be positive");
    }

    std::unordered_set<int> ids;
    const long n = hw.crossbar_dim;
    for (const auto& c : snn.clusters) {
        std::ostringstream tag;
        tag << "cluster " << c.id;
        if (!ids.insert(c.id).second) {
            add(ViolationKind::duplicate_cluster_id, tag.str() + " appears more than once");
        }
        if (c.neuron_count < 1) {
            add(ViolationKind::empty_cluster, tag.str() + " has no neurons");
            continue;
        }
        if (c.neuron_count > n) {
            std::ostringstream msg;
            msg << tag.str() << " has " << c.neuron_count << " neurons, crossbar holds " << n;
            add(ViolationKind::crossbar_overflow, msg.str());
        }
        // Synapses per output neuron, rounded up.
        const long fan_in = (std::max(c.synapse_count, 0L) + c.neuron_count - 1) / c.neuron_count;
        if (fan_in > n) {
            std::ostringstream msg;
            msg << tag.str() << " needs " << fan_in << " pre-synaptic inputs per neuron, crossbar has " << n;
            add(ViolationKind::fan_in_overflow, msg.str());
        }
    }

    for (const auto& e : snn.edges) {
        if (!snn.index_of(e.src_cluster) || !snn.index_of(e.dst_cluster)) {
            std::ostringstream msg;
            msg << "edge " << e.src_cluster << " -> " << e.dst_cluster << " references a missing cluster";
            add(ViolationKind::dangling_edge, msg.str());
        }
        if (e.spike_count < 0) {
            std::ostringstream msg;
            msg << "edge " << e.src_cluster << " -> " << e.dst_cluster << " has negative spike count";
            add(ViolationKind::negative_spike_count, msg.str());
        }
    }
    return out;
}

} // namespace agemap
