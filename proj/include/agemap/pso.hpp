#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agemap/fitness.hpp"
#include "agemap/pareto.hpp"
#include "agemap/rng.hpp"

namespace agemap
{

struct PsoConfig
{
    int n_particles{20};
    int max_iterations{50};
    double phi1{2.0}; // pull towards the particle's own best
    double phi2{2.0}; // pull towards the swarm best
    std::uint64_t seed{1};
    double v_clamp{4.0};

    // max(20, 2|C|) particles and 100|C| iterations.
    static PsoConfig defaults_for(std::size_t num_clusters);

    void check() const;
};

// Row-major |C| x |T| 0/1 matrix plus the sigmoid velocities it was drawn from.
struct BinaryMatrix
{
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<unsigned char> bits;
    std::vector<double> prob;

    unsigned char at(std::size_t r, std::size_t c) const { return bits[r * cols + c]; }
};

double sigmoid(double v);

/**
 * Draws a 0/1 matrix from a velocity vector: with p = sigmoid(v), a component
 * is 0 when a uniform draw falls below p and 1 otherwise.
 */
BinaryMatrix binarize(std::span<const double> velocity, std::size_t rows, std::size_t cols, Rng& rng);

/**
 * Turns an arbitrary 0/1 matrix into a feasible mapping. A row without exactly
 * one set bit is replaced by the column with the highest sigmoid velocity
 * (lowest index on ties). Tiles over capacity keep their lowest-index
 * clusters; the rest move, in cluster order, to the nearest tile with room
 * (lowest index on ties). Throws InfeasibleError if the clusters cannot fit.
 */
Mapping repair(const BinaryMatrix& matrix, const HardwareConfig& hw);

struct Particle
{
    std::vector<double> position;
    std::vector<double> velocity;
    Mapping mapping;
    Fitness fitness;
    std::vector<double> best_position;
    Mapping best_mapping;
    Fitness best_fitness;
};

struct SwarmState
{
    std::vector<Particle> particles;
    std::vector<double> gbest_position;
    Mapping gbest_mapping;
    Fitness gbest_fitness;
    int iteration{0};
    Archive archive;
    Rng rng;
};

SwarmState initialize_swarm(const FitnessContext& ctx, const PsoConfig& cfg);

/**
 * One synchronous swarm update. For every particle and dimension,
 *
 *    v += phi1 * r1 * (p_best - x) + phi2 * r2 * (g_best - x),  |v| <= v_clamp
 *    x += v
 *
 * with fresh r1, r2 ~ U[0, 1). The particle's mapping is then drawn with
 * binarize + repair and scored; personal bests move only on strict
 * improvement and the swarm best is the minimum personal best (lowest
 * particle index on ties). Every evaluated mapping is archived.
 */
void step_swarm(SwarmState& state, const PsoConfig& cfg, const FitnessContext& ctx);

struct OptimizeResult
{
    Mapping best_mapping;
    Fitness best_fitness;
    ParetoFront front;
    std::vector<ArchiveEntry> archive;
    std::vector<double> best_history; // g_best lambda after init and each step
    long evaluations{0};
    int iterations{0};
};

OptimizeResult optimize(const FitnessContext& ctx, const PsoConfig& cfg);

} // namespace agemap
