#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "agemap/fitness.hpp"
#include "agemap/mapping.hpp"

namespace agemap
{

struct ArchiveEntry
{
    Mapping mapping;
    Fitness fitness;
    int iteration{0}; // first iteration the mapping was produced (0 = initialization)
};

// Every distinct feasible mapping the search produced, in first-seen order.
class Archive
{
  public:
    Archive(std::size_t num_clusters, HardwareConfig hw);

    // Rejects mappings that break the placement rules.
    void insert(const Mapping& mapping, const Fitness& fitness, int iteration);

    std::span<const ArchiveEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    long insertions() const { return insertions_; }

  private:
    std::size_t num_clusters_;
    HardwareConfig hw_;
    std::vector<ArchiveEntry> entries_;
    std::unordered_map<Mapping, std::size_t, MappingHash> index_;
    long insertions_{0};
};

struct ParetoPoint
{
    Mapping mapping;
    double tau{0.0};
    double aging{0.0};
};

// Non-dominated (tau, aging) points, sorted by tau, then aging, then mapping.
struct ParetoFront
{
    std::vector<ParetoPoint> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// p dominates q iff it is no worse in both objectives and better in one.
bool dominates(double tau_p, double aging_p, double tau_q, double aging_q);

ParetoFront extract_pareto(std::span<const ArchiveEntry> archive);

/**
 * Picks the lowest-aging point whose tau is within (1 + epsilon) of the
 * front's minimum tau. Ties go to lower tau, then the lexicographically
 * smaller assignment.
 */
ParetoPoint select_final(const ParetoFront& front, double epsilon);

} // namespace agemap
