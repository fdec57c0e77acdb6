#pragma once

#include <functional>

#include "agemap/aging.hpp"
#include "agemap/fitness.hpp"
#include "agemap/pareto.hpp"

namespace agemap::oracle
{

// Enumeration refuses instances with more feasible mappings than this.
constexpr double enumeration_guard = 1e6;

// Exact count of capacity-respecting assignments of labelled clusters.
double count_feasible_mappings(std::size_t num_clusters, const HardwareConfig& hw);

// Calls `visit` once per feasible mapping, in lexicographic order of the
// assignment vector. Throws GuardError above the enumeration guard.
void enumerate_mappings(std::size_t num_clusters, const HardwareConfig& hw,
                        const std::function<void(const Mapping&)>& visit);

std::vector<Mapping> all_mappings(std::size_t num_clusters, const HardwareConfig& hw);

struct Optimum
{
    Mapping mapping;
    Fitness fitness;
    std::size_t evaluated{0};
};

// Exact argmin of lambda; ties keep the lexicographically first mapping.
Optimum brute_force_optimum(const FitnessContext& ctx);

// Exact non-dominated set over every feasible mapping, found with a
// quadratic dominance filter and sorted like extract_pareto's output.
ParetoFront brute_force_pareto(const FitnessContext& ctx);

/**
 * Reliability at time t obtained by stepping through the trace in
 * `substeps` pieces per segment. At each step the current reliability is
 * converted to the equivalent age under the segment's scale, advanced by the
 * step, and mapped back. Independent of ReliabilityCurve's shift bookkeeping.
 */
double stepwise_reliability(const VoltageTrace& trace, double t, double temperature, const AgingParams& p,
                            int substeps = 16);

} // namespace agemap::oracle
