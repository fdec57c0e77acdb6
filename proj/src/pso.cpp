#include "agemap/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "agemap/error.hpp"

namespace agemap
{

PsoConfig PsoConfig::defaults_for(std::size_t num_clusters)
{
    PsoConfig cfg;
    cfg.n_particles = std::max<int>(20, 2 * static_cast<int>(num_clusters));
    cfg.max_iterations = 100 * static_cast<int>(std::max<std::size_t>(num_clusters, 1));
    return cfg;
}

void PsoConfig::check() const
{
    if (n_particles < 2) {
        throw std::invalid_argument("pso needs at least 2 particles");
    }
    if (max_iterations < 0) {
        throw std::invalid_argument("pso max_iterations must be >= 0");
    }
    if (!(phi1 >= 0.0) || !(phi2 >= 0.0)) {
        throw std::invalid_argument("pso acceleration constants must be >= 0");
    }
    if (!(v_clamp > 0.0)) {
        throw std::invalid_argument("pso v_clamp must be > 0");
    }
}

double sigmoid(double v)
{
    return 1.0 / (1.0 + std::exp(-v));
}

BinaryMatrix binarize(std::span<const double> velocity, std::size_t rows, std::size_t cols, Rng& rng)
{
    if (velocity.size() != rows * cols) {
        throw std::invalid_argument("binarize: velocity size does not match the matrix shape");
    }
    BinaryMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.bits.resize(velocity.size());
    m.prob.resize(velocity.size());
    for (std::size_t d = 0; d < velocity.size(); ++d) {
        m.prob[d] = sigmoid(velocity[d]);
        m.bits[d] = rng.uniform() < m.prob[d] ? 0 : 1;
    }
    return m;
}

Mapping repair(const BinaryMatrix& matrix, const HardwareConfig& hw)
{
    const std::size_t clusters = matrix.rows;
    const int tiles = hw.num_tiles();
    if (matrix.cols != static_cast<std::size_t>(tiles)) {
        throw std::invalid_argument("repair: matrix width does not match the tile count");
    }
    if (clusters > static_cast<std::size_t>(hw.total_capacity())) {
        throw InfeasibleError("infeasible instance: " + std::to_string(clusters) + " clusters, capacity " +
                              std::to_string(hw.total_capacity()));
    }

    Mapping m;
    m.assignment.resize(clusters);
    for (std::size_t r = 0; r < clusters; ++r) {
        int ones = 0, last = -1;
        for (int c = 0; c < tiles; ++c) {
            if (matrix.at(r, c)) {
                ++ones;
                last = c;
            }
        }
        if (ones == 1) {
            m.assignment[r] = last;
            continue;
        }
        int best = 0;
        for (int c = 1; c < tiles; ++c) {
            if (matrix.prob[r * tiles + c] > matrix.prob[r * tiles + best]) {
                best = c;
            }
        }
        m.assignment[r] = best;
    }

    std::vector<int> load(tiles, 0);
    std::vector<std::size_t> evicted;
    for (std::size_t r = 0; r < clusters; ++r) {
        const int t = m.assignment[r];
        if (load[t] < hw.tile_capacity) {
            ++load[t];
        } else {
            evicted.push_back(r);
        }
    }
    for (std::size_t r : evicted) {
        const int from = m.assignment[r];
        int target = -1;
        for (int t = 0; t < tiles; ++t) {
            if (load[t] >= hw.tile_capacity) {
                continue;
            }
            if (target < 0 || hw.hops(from, t) < hw.hops(from, target)) {
                target = t;
            }
        }
        m.assignment[r] = target;
        ++load[target];
    }
    return m;
}

namespace
{

std::vector<double> one_hot(const Mapping& m, int tiles)
{
    std::vector<double> x(m.size() * tiles, 0.0);
    for (std::size_t r = 0; r < m.size(); ++r) {
        x[r * tiles + m.assignment[r]] = 1.0;
    }
    return x;
}

void update_global_best(SwarmState& s)
{
    std::size_t best = 0;
    for (std::size_t l = 1; l < s.particles.size(); ++l) {
        if (s.particles[l].best_fitness.lambda < s.particles[best].best_fitness.lambda) {
            best = l;
        }
    }
    const auto& p = s.particles[best];
    s.gbest_position = p.best_position;
    s.gbest_mapping = p.best_mapping;
    s.gbest_fitness = p.best_fitness;
}

} // namespace

SwarmState initialize_swarm(const FitnessContext& ctx, const PsoConfig& cfg)
{
    cfg.check();
    const auto& hw = ctx.hardware();
    const std::size_t rows = ctx.num_clusters();
    const auto cols = static_cast<std::size_t>(hw.num_tiles());
    if (rows > static_cast<std::size_t>(hw.total_capacity())) {
        throw InfeasibleError("infeasible instance: " + std::to_string(rows) + " clusters, capacity " +
                              std::to_string(hw.total_capacity()));
    }

    SwarmState s{{}, {}, {}, {}, 0, Archive(rows, hw), Rng(cfg.seed)};
    s.particles.resize(cfg.n_particles);
    for (auto& p : s.particles) {
        p.velocity.resize(rows * cols);
        for (double& v : p.velocity) {
            v = s.rng.uniform(-1.0, 1.0);
        }
        p.mapping = repair(binarize(p.velocity, rows, cols, s.rng), hw);
        p.position = one_hot(p.mapping, hw.num_tiles());
        p.fitness = ctx.evaluate(p.mapping);
        s.archive.insert(p.mapping, p.fitness, 0);
        p.best_position = p.position;
        p.best_mapping = p.mapping;
        p.best_fitness = p.fitness;
    }
    update_global_best(s);
    return s;
}

void step_swarm(SwarmState& s, const PsoConfig& cfg, const FitnessContext& ctx)
{
    const auto& hw = ctx.hardware();
    const std::size_t rows = ctx.num_clusters();
    const auto cols = static_cast<std::size_t>(hw.num_tiles());
    ++s.iteration;

    for (auto& p : s.particles) {
        for (std::size_t d = 0; d < p.velocity.size(); ++d) {
            const double r1 = s.rng.uniform();
            const double r2 = s.rng.uniform();
            double v = p.velocity[d] + cfg.phi1 * r1 * (p.best_position[d] - p.position[d]) +
                       cfg.phi2 * r2 * (s.gbest_position[d] - p.position[d]);
            v = std::clamp(v, -cfg.v_clamp, cfg.v_clamp);
            p.velocity[d] = v;
            p.position[d] += v;
        }
        p.mapping = repair(binarize(p.velocity, rows, cols, s.rng), hw);
        p.fitness = ctx.evaluate(p.mapping);
        s.archive.insert(p.mapping, p.fitness, s.iteration);
        if (p.fitness.lambda < p.best_fitness.lambda) {
            p.best_position = one_hot(p.mapping, hw.num_tiles());
            p.best_mapping = p.mapping;
            p.best_fitness = p.fitness;
        }
    }
    update_global_best(s);
}

OptimizeResult optimize(const FitnessContext& ctx, const PsoConfig& cfg)
{
    SwarmState s = initialize_swarm(ctx, cfg);
    OptimizeResult r;
    r.best_history.push_back(s.gbest_fitness.lambda);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        step_swarm(s, cfg, ctx);
        r.best_history.push_back(s.gbest_fitness.lambda);
    }
    r.best_mapping = s.gbest_mapping;
    r.best_fitness = s.gbest_fitness;
    r.archive.assign(s.archive.entries().begin(), s.archive.entries().end());
    r.front = extract_pareto(r.archive);
    r.evaluations = s.archive.insertions();
    r.iterations = s.iteration;
    return r;
}

} // namespace agemap
