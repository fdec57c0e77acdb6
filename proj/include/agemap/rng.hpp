#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace agemap
{

// mt19937_64 with hand-rolled transforms, so draws are identical across
// standard library implementations (std::*_distribution is not portable).
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  private:
    std::mt19937_64 engine_;
};

} // namespace agemap
