#include "agemap/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace agemap
{

Archive::Archive(std::size_t num_clusters, HardwareConfig hw) : num_clusters_(num_clusters), hw_(std::move(hw)) {}

void Archive::insert(const Mapping& mapping, const Fitness& fitness, int iteration)
{
    require_valid_mapping(mapping, num_clusters_, hw_);
    ++insertions_;
    if (index_.contains(mapping)) {
        return;
    }
    index_.emplace(mapping, entries_.size());
    entries_.push_back({mapping, fitness, iteration});
}

bool dominates(double tau_p, double aging_p, double tau_q, double aging_q)
{
    return tau_p <= tau_q && aging_p <= aging_q && (tau_p < tau_q || aging_p < aging_q);
}

ParetoFront extract_pareto(std::span<const ArchiveEntry> archive)
{
    if (archive.empty()) {
        throw std::invalid_argument("extract_pareto: empty archive");
    }
    std::vector<ParetoPoint> pts;
    pts.reserve(archive.size());
    for (const auto& e : archive) {
        pts.push_back({e.mapping, e.fitness.tau, e.fitness.aging});
    }
    std::sort(pts.begin(), pts.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        return std::tie(a.tau, a.aging, a.mapping) < std::tie(b.tau, b.aging, b.mapping);
    });

    // Sweep in tau order: a point survives if its aging beats everything
    // before it, or ties the best aging at the same tau.
    ParetoFront front;
    double best_aging = std::numeric_limits<double>::infinity();
    double best_tau = 0.0;
    for (auto& p : pts) {
        if (p.aging < best_aging) {
            best_aging = p.aging;
            best_tau = p.tau;
            front.points.push_back(std::move(p));
        } else if (p.aging == best_aging && p.tau == best_tau) {
            if (front.points.back().mapping != p.mapping) {
                front.points.push_back(std::move(p));
            }
        }
    }
    return front;
}

ParetoPoint select_final(const ParetoFront& front, double epsilon)
{
    if (front.empty()) {
        throw std::invalid_argument("select_final: empty front");
    }
    if (!(epsilon >= 0.0)) {
        throw std::invalid_argument("select_final: epsilon must be >= 0");
    }
    double min_tau = std::numeric_limits<double>::infinity();
    for (const auto& p : front.points) {
        min_tau = std::min(min_tau, p.tau);
    }
    const double limit = std::isinf(epsilon) ? std::numeric_limits<double>::infinity() : (1.0 + epsilon) * min_tau;

    const ParetoPoint* best = nullptr;
    for (const auto& p : front.points) {
        if (p.tau > limit) {
            continue;
        }
        if (!best || std::tie(p.aging, p.tau, p.mapping) < std::tie(best->aging, best->tau, best->mapping)) {
            best = &p;
        }
    }
    return *best;
}

} // namespace agemap
