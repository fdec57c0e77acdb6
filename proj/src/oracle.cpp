#include "agemap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "agemap/error.hpp"

namespace agemap::oracle
{

double count_feasible_mappings(std::size_t num_clusters, const HardwareConfig& hw)
{
    // ways[k]: assignments of k labelled clusters to the tiles seen so far.
    const std::size_t n = num_clusters;
    std::vector<long double> ways(n + 1, 0.0L), next(n + 1);
    ways[0] = 1.0L;
    std::vector<std::vector<long double>> binom(n + 1, std::vector<long double>(n + 1, 0.0L));
    for (std::size_t i = 0; i <= n; ++i) {
        binom[i][0] = 1.0L;
        for (std::size_t j = 1; j <= i; ++j) {
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0.0L);
        }
    }
    for (int t = 0; t < hw.num_tiles(); ++t) {
        std::fill(next.begin(), next.end(), 0.0L);
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t j = 0; j <= k && j <= static_cast<std::size_t>(hw.tile_capacity); ++j) {
                next[k] += binom[k][j] * ways[k - j];
            }
        }
        ways.swap(next);
    }
    return static_cast<double>(ways[n]);
}

void enumerate_mappings(std::size_t num_clusters, const HardwareConfig& hw,
                        const std::function<void(const Mapping&)>& visit)
{
    const double count = count_feasible_mappings(num_clusters, hw);
    if (count > enumeration_guard) {
        std::ostringstream msg;
        msg << "enumeration refused: about " << count << " feasible mappings exceeds the guard of "
            << enumeration_guard;
        throw GuardError(msg.str(), count);
    }
    if (count == 0.0) {
        throw InfeasibleError("infeasible instance: no mapping satisfies the tile capacities");
    }

    Mapping m;
    m.assignment.assign(num_clusters, 0);
    std::vector<int> load(hw.num_tiles(), 0);
    std::function<void(std::size_t)> place = [&](std::size_t c) {
        if (c == num_clusters) {
            visit(m);
            return;
        }
        for (int t = 0; t < hw.num_tiles(); ++t) {
            if (load[t] == hw.tile_capacity) {
                continue;
            }
            ++load[t];
            m.assignment[c] = t;
            place(c + 1);
            --load[t];
        }
    };
    place(0);
}

std::vector<Mapping> all_mappings(std::size_t num_clusters, const HardwareConfig& hw)
{
    std::vector<Mapping> out;
    enumerate_mappings(num_clusters, hw, [&](const Mapping& m) { out.push_back(m); });
    return out;
}

Optimum brute_force_optimum(const FitnessContext& ctx)
{
    Optimum best;
    bool have = false;
    enumerate_mappings(ctx.num_clusters(), ctx.hardware(), [&](const Mapping& m) {
        const Fitness f = ctx.evaluate(m);
        ++best.evaluated;
        if (!have || f.lambda < best.fitness.lambda) {
            best.mapping = m;
            best.fitness = f;
            have = true;
        }
    });
    return best;
}

ParetoFront brute_force_pareto(const FitnessContext& ctx)
{
    std::vector<ParetoPoint> all;
    enumerate_mappings(ctx.num_clusters(), ctx.hardware(), [&](const Mapping& m) {
        const Fitness f = ctx.evaluate(m);
        all.push_back({m, f.tau, f.aging});
    });

    ParetoFront front;
    for (const auto& q : all) {
        bool dominated = false;
        for (const auto& p : all) {
            if (dominates(p.tau, p.aging, q.tau, q.aging)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            front.points.push_back(q);
        }
    }
    std::sort(front.points.begin(), front.points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        return std::tie(a.tau, a.aging, a.mapping) < std::tie(b.tau, b.aging, b.mapping);
    });
    return front;
}

double stepwise_reliability(const VoltageTrace& trace, double t, double temperature, const AgingParams& p,
                            int substeps)
{
    if (!(t >= 0.0) || t > trace.span() * (1.0 + 1e-15)) {
        throw std::domain_error("stepwise_reliability: time outside the trace span");
    }
    const double beta = p.beta();
    double r = 1.0;
    double clock = 0.0;
    for (const auto& seg : trace.segments()) {
        if (clock >= t) {
            break;
        }
        const double a = alpha(seg.voltage, temperature, p);
        const double until = std::min(clock + seg.duration, t);
        const double h = (until - clock) / substeps;
        for (int i = 0; i < substeps; ++i) {
            // Age that yields the current reliability under this segment's scale.
            const double age = a * std::pow(-std::log(r), 1.0 / beta);
            r = std::exp(-std::pow((age + h) / a, beta));
        }
        clock = until;
    }
    return r;
}

} // namespace agemap::oracle
