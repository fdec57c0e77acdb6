#include "agemap/fitness.hpp"

namespace agemap
{

FitnessContext::FitnessContext(Workload workload, HardwareConfig hw, AgingParams aging, PerfParams perf,
                               Objective objective)
    : model_(std::make_unique<HardwareAgingModel>(std::move(workload), std::move(hw), std::move(aging))),
      perf_(perf), objective_(objective)
{
    perf_.check();
}

Fitness FitnessContext::evaluate(const Mapping& mapping) const
{
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(mapping);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    Fitness f;
    f.tau = execution_time(workload().snn, mapping, hardware(), perf_);
    f.aging = model_->hardware_aging(mapping);
    f.lambda = objective_ == Objective::time_only ? f.tau : f.tau * f.aging;

    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(mapping, f);
    return f;
}

std::size_t FitnessContext::distinct_evaluations() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

} // namespace agemap
