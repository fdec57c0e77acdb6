#include "agemap/mapping.hpp"

#include <sstream>

#include "agemap/error.hpp"

namespace agemap
{

std::vector<std::vector<std::size_t>> Mapping::tile_members(int num_tiles) const
{
    std::vector<std::vector<std::size_t>> members(num_tiles);
    for (std::size_t c = 0; c < assignment.size(); ++c) {
        const int t = assignment[c];
        if (t >= 0 && t < num_tiles) {
            members[t].push_back(c);
        }
    }
    return members;
}

std::vector<unsigned char> Mapping::to_matrix(int num_tiles) const
{
    std::vector<unsigned char> m(assignment.size() * num_tiles, 0);
    for (std::size_t c = 0; c < assignment.size(); ++c) {
        if (assignment[c] >= 0 && assignment[c] < num_tiles) {
            m[c * num_tiles + assignment[c]] = 1;
        }
    }
    return m;
}

std::string Mapping::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        os << (i ? " " : "") << assignment[i];
    }
    return os.str();
}

std::size_t MappingHash::operator()(const Mapping& m) const noexcept
{
    // FNV-1a over the assignment.
    std::size_t h = 1469598103934665603ULL;
    for (int t : m.assignment) {
        h ^= static_cast<std::size_t>(t) + 0x9e3779b9U;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::string> mapping_violations(const Mapping& mapping, std::size_t num_clusters, const HardwareConfig& hw)
{
    std::vector<std::string> out;
    if (mapping.size() != num_clusters) {
        std::ostringstream msg;
        msg << "mapping covers " << mapping.size() << " clusters, workload has " << num_clusters;
        out.push_back(msg.str());
        return out;
    }
    std::vector<int> load(hw.num_tiles(), 0);
    for (std::size_t c = 0; c < mapping.size(); ++c) {
        const int t = mapping.assignment[c];
        if (t < 0 || t >= hw.num_tiles()) {
            std::ostringstream msg;
            msg << "cluster " << c << " assigned to tile " << t << " outside [0, " << hw.num_tiles() << ")";
            out.push_back(msg.str());
            continue;
        }
        ++load[t];
    }
    for (int t = 0; t < hw.num_tiles(); ++t) {
        if (load[t] > hw.tile_capacity) {
            std::ostringstream msg;
            msg << "tile " << t << " holds " << load[t] << " clusters, capacity " << hw.tile_capacity;
            out.push_back(msg.str());
        }
    }
    return out;
}

void require_valid_mapping(const Mapping& mapping, std::size_t num_clusters, const HardwareConfig& hw)
{
    auto v = mapping_violations(mapping, num_clusters, hw);
    if (!v.empty()) {
        std::string what = "invalid mapping: " + v.front();
        if (v.size() > 1) {
            what += " (+" + std::to_string(v.size() - 1) + " more)";
        }
        throw ConstraintError(what, std::move(v));
    }
}

Mapping first_fit_mapping(std::size_t num_clusters, const HardwareConfig& hw)
{
    if (num_clusters > static_cast<std::size_t>(hw.total_capacity())) {
        throw InfeasibleError("workload has " + std::to_string(num_clusters) + " clusters but hardware holds " +
                              std::to_string(hw.total_capacity()));
    }
    Mapping m;
    m.assignment.resize(num_clusters);
    for (std::size_t c = 0; c < num_clusters; ++c) {
        m.assignment[c] = static_cast<int>(c) / hw.tile_capacity;
    }
    return m;
}

} // namespace agemap
