#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "agemap/aging.hpp"
#include "agemap/mapping.hpp"
#include "agemap/perf.hpp"
#include "agemap/workload.hpp"

namespace agemap
{

enum class Objective
{
    aging_time_product, // lambda = tau * aging
    time_only,          // lambda = tau (performance-oriented baseline)
};

struct Fitness
{
    double lambda{0.0};
    double tau{0.0};   // seconds
    double aging{0.0}; // hardware overall aging
};

// Everything needed to score a mapping. Results are memoized per mapping.
class FitnessContext
{
  public:
    FitnessContext(Workload workload, HardwareConfig hw, AgingParams aging, PerfParams perf,
                   Objective objective = Objective::aging_time_product);

    Fitness evaluate(const Mapping& mapping) const;

    const Workload& workload() const { return model_->workload(); }
    const HardwareConfig& hardware() const { return model_->hardware(); }
    const AgingParams& aging_params() const { return model_->params(); }
    const PerfParams& perf_params() const { return perf_; }
    const HardwareAgingModel& aging_model() const { return *model_; }
    Objective objective() const { return objective_; }
    std::size_t num_clusters() const { return model_->workload().snn.size(); }

    std::size_t distinct_evaluations() const;

  private:
    std::unique_ptr<HardwareAgingModel> model_;
    PerfParams perf_;
    Objective objective_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<Mapping, Fitness, MappingHash> cache_;
};

} // namespace agemap
