#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agemap/model.hpp"

namespace agemap
{

/**
 * Cluster-to-tile assignment: entry i is the tile holding cluster i. This is
 * the dense form of the binary |C| x |T| placement matrix; the one-tile-per-
 * cluster rule holds by construction and tile capacity is checked separately.
 */
struct Mapping
{
    std::vector<int> assignment;

    std::size_t size() const { return assignment.size(); }

    // Cluster positions per tile, ascending.
    std::vector<std::vector<std::size_t>> tile_members(int num_tiles) const;

    // Row-major |C| x |T| 0/1 matrix.
    std::vector<unsigned char> to_matrix(int num_tiles) const;

    std::string to_string() const;

    auto operator<=>(const Mapping&) const = default;
};

struct MappingHash
{
    std::size_t operator()(const Mapping& m) const noexcept;
};

// Empty iff every cluster has one in-range tile and no tile exceeds capacity.
std::vector<std::string> mapping_violations(const Mapping& mapping, std::size_t num_clusters, const HardwareConfig& hw);

// Throws ConstraintError listing the violations.
void require_valid_mapping(const Mapping& mapping, std::size_t num_clusters, const HardwareConfig& hw);

// Fills tile 0 to capacity, then tile 1, and so on.
Mapping first_fit_mapping(std::size_t num_clusters, const HardwareConfig& hw);

} // namespace agemap
