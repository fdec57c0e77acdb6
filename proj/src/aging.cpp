#include "agemap/aging.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "agemap/error.hpp"

namespace agemap
{

AgingParams AgingParams::scaled(double s) const
{
    AgingParams out = *this;
    out.tddb.A *= s;
    out.nbti.g0_ref /= s;
    out.hci.law.g0_ref /= s;
    return out;
}

void AgingParams::check() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw std::invalid_argument(what);
        }
    };
    require(tddb.A > 0.0, "tddb.A must be > 0");
    require(tddb.gamma >= 0.0, "tddb.gamma must be >= 0");
    require(tddb.beta > 0.0, "tddb.beta must be > 0");
    require(tddb.T_ref > 0.0, "tddb.T_ref must be > 0");
    require(tddb.Ea >= 0.0, "tddb.Ea must be >= 0");
    for (const PowerLawParams* law : {&nbti, &hci.law}) {
        require(law->g0_ref >= 0.0, "g0_ref must be >= 0");
        require(law->m > 0.0, "m must be > 0");
        require(law->n_exp > 0.0, "n_exp must be > 0");
        require(law->V_th > 0.0, "V_th must be > 0");
        require(law->Ea >= 0.0, "Ea must be >= 0");
    }
    require(K > 0.0, "K must be > 0");
}

double alpha(double v, double temperature, const AgingParams& p)
{
    if (!(v > 0.0)) {
        throw std::domain_error("alpha: voltage must be positive");
    }
    if (!(temperature > 0.0)) {
        throw std::domain_error("alpha: temperature must be positive");
    }
    const auto& t = p.tddb;
    const double scale = t.A * std::exp(-t.gamma * std::sqrt(v)) / std::tgamma(1.0 + 1.0 / t.beta);
    return scale * std::exp(t.Ea / p.K * (1.0 / temperature - 1.0 / t.T_ref));
}

double tddb_aging(const VoltageTrace& trace, double temperature, const AgingParams& p)
{
    double total = 0.0;
    for (const auto& s : trace.segments()) {
        total += s.duration / alpha(s.voltage, temperature, p);
    }
    return total;
}

namespace
{

double power_law_aging(const VoltageTrace& trace, double temperature, const PowerLawParams& law,
                       const AgingParams& p)
{
    const double g0 = law.g0_ref * std::exp(law.Ea / p.K * (1.0 / p.tddb.T_ref - 1.0 / temperature));
    double total = 0.0;
    for (const auto& s : trace.segments()) {
        if (s.voltage > law.V_th) {
            total += g0 * std::pow(s.voltage - law.V_th, law.m) * std::pow(s.duration, law.n_exp);
        }
    }
    return total;
}

} // namespace

double nbti_aging(const VoltageTrace& trace, double temperature, const AgingParams& p)
{
    return power_law_aging(trace, temperature, p.nbti, p);
}

double hci_aging(const VoltageTrace& trace, double temperature, const AgingParams& p)
{
    if (!p.hci.enabled) {
        return 0.0;
    }
    return power_law_aging(trace, temperature, p.hci.law, p);
}

double combine_aging(double a_tddb, double a_nbti, double a_hci, double beta)
{
    const double a[3] = {a_tddb, a_nbti, a_hci};
    for (double x : a) {
        if (!(x >= 0.0)) {
            throw std::domain_error("combine_aging: agings must be non-negative");
        }
    }
    if (!(beta > 0.0)) {
        throw std::domain_error("combine_aging: beta must be positive");
    }
    const int nonzero = (a_tddb > 0.0) + (a_nbti > 0.0) + (a_hci > 0.0);
    if (nonzero <= 1) {
        return std::max({a_tddb, a_nbti, a_hci});
    }

    double h[3];
    for (int k = 0; k < 3; ++k) {
        h[k] = std::pow(a[k], beta);
    }
    const double top = std::max({h[0], h[1], h[2]});
    double log_sum;
    if (top < 700.0) {
        // ln(1 + sum(e^h - 1)) keeps full precision for small hazards.
        log_sum = std::log1p(std::expm1(h[0]) + std::expm1(h[1]) + std::expm1(h[2]));
    } else {
        const double rest = std::exp(h[0] - top) + std::exp(h[1] - top) + std::exp(h[2] - top);
        log_sum = top + std::log(rest - 2.0 * std::exp(-top));
    }
    return std::pow(log_sum, 1.0 / beta);
}

double mttf_from_aging(double aging, double window, double beta)
{
    if (!(aging >= 0.0)) {
        throw std::domain_error("mttf_from_aging: aging must be non-negative");
    }
    if (aging == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return window / aging * std::tgamma(1.0 + 1.0 / beta);
}

ReliabilityCurve::ReliabilityCurve(const VoltageTrace& trace, double temperature, const AgingParams& p)
    : beta_(p.beta())
{
    double t = 0.0;
    for (const auto& s : trace.segments()) {
        const double a = alpha(s.voltage, temperature, p);
        double shift = 0.0;
        if (!alphas_.empty()) {
            // Equate both sides at t: (t + shift) / a == (t + prev_shift) / prev_alpha.
            shift = (a / alphas_.back()) * (t + shifts_.back()) - t;
        }
        starts_.push_back(t);
        alphas_.push_back(a);
        shifts_.push_back(shift);
        t += s.duration;
    }
    span_ = t;
}

double ReliabilityCurve::eval(std::size_t k, double t) const
{
    return std::exp(-std::pow((t + shifts_[k]) / alphas_[k], beta_));
}

double ReliabilityCurve::at(double t) const
{
    if (!(t >= 0.0) || t > span_) {
        throw std::domain_error("reliability_at: time outside the trace span");
    }
    if (starts_.empty()) {
        return 1.0;
    }
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - starts_.begin()) - 1;
    return eval(k, t);
}

double ReliabilityCurve::left_limit(std::size_t k) const
{
    if (k == 0 || k >= starts_.size()) {
        throw std::out_of_range("left_limit: not an interior boundary");
    }
    return eval(k - 1, starts_[k]);
}

double ReliabilityCurve::right_limit(std::size_t k) const
{
    if (k == 0 || k >= starts_.size()) {
        throw std::out_of_range("right_limit: not an interior boundary");
    }
    return eval(k, starts_[k]);
}

double reliability_at(const VoltageTrace& trace, double t, double temperature, const AgingParams& p)
{
    return ReliabilityCurve(trace, temperature, p).at(t);
}

MechanismAging neuron_aging(const VoltageTrace& trace, double temperature, const AgingParams& p)
{
    MechanismAging a;
    a.tddb = tddb_aging(trace, temperature, p);
    a.nbti = nbti_aging(trace, temperature, p);
    a.hci = hci_aging(trace, temperature, p);
    a.overall = combine_aging(a.tddb, a.nbti, a.hci, p.beta());
    return a;
}

std::size_t HardwareAgingModel::VecHash::operator()(const std::vector<std::size_t>& v) const noexcept
{
    std::size_t h = 1469598103934665603ULL;
    for (std::size_t x : v) {
        h ^= x + 0x9e3779b9U;
        h *= 1099511628211ULL;
    }
    return h;
}

HardwareAgingModel::HardwareAgingModel(Workload workload, HardwareConfig hw, AgingParams params)
    : workload_(std::move(workload)), hw_(std::move(hw)), params_(std::move(params))
{
    hw_.check();
    params_.check();
    if (workload_.trains.size() != workload_.snn.size()) {
        throw std::invalid_argument("workload needs exactly one spike train per cluster");
    }
    predecessors_.resize(workload_.snn.size());
    for (const auto& e : workload_.snn.indexed_edges()) {
        predecessors_[e.dst].push_back(e.src);
    }
    idle_ = neuron_aging(VoltageTrace::constant(hw_.device.v_idle, workload_.snn.workload_window), hw_.temperature,
                         params_);
}

bool HardwareAgingModel::has_spikes() const
{
    return std::any_of(workload_.trains.begin(), workload_.trains.end(), [](const SpikeTrain& t) { return !t.empty(); });
}

std::vector<std::size_t> HardwareAgingModel::sources_for(std::span<const std::size_t> members) const
{
    std::set<std::size_t> sources;
    for (std::size_t c : members) {
        sources.insert(c);
        sources.insert(predecessors_[c].begin(), predecessors_[c].end());
    }
    return {sources.begin(), sources.end()};
}

std::vector<std::pair<int, VoltageTrace>> HardwareAgingModel::port_traces(std::span<const std::size_t> members) const
{
    const int n = hw_.crossbar_dim;
    std::vector<std::vector<double>> port_times(n);
    for (std::size_t s : sources_for(members)) {
        const auto& times = workload_.trains[s].times();
        const std::size_t neurons = static_cast<std::size_t>(std::max(1, workload_.snn.clusters[s].neuron_count));
        for (std::size_t k = 0; k < times.size(); ++k) {
            port_times[(k % neurons) % n].push_back(times[k]);
        }
    }
    std::vector<std::pair<int, VoltageTrace>> out;
    for (int port = 0; port < n; ++port) {
        if (port_times[port].empty()) {
            continue;
        }
        auto train = SpikeTrain::from_unsorted(std::move(port_times[port]));
        out.emplace_back(port, build_voltage_trace(train, hw_.device, workload_.snn.workload_window));
    }
    return out;
}

double HardwareAgingModel::tile_aging(std::span<const std::size_t> members) const
{
    std::vector<std::size_t> key(members.begin(), members.end());
    std::sort(key.begin(), key.end());
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = tile_cache_.find(key);
        if (it != tile_cache_.end()) {
            return it->second;
        }
    }
    const auto traces = port_traces(key);
    double worst = traces.size() < static_cast<std::size_t>(hw_.crossbar_dim) ? idle_.overall : 0.0;
    for (const auto& [port, trace] : traces) {
        worst = std::max(worst, neuron_aging(trace, hw_.temperature, params_).overall);
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    tile_cache_.emplace(std::move(key), worst);
    return worst;
}

double HardwareAgingModel::hardware_aging(const Mapping& mapping) const
{
    require_valid_mapping(mapping, workload_.snn.size(), hw_);
    double worst = 0.0;
    for (const auto& members : mapping.tile_members(hw_.num_tiles())) {
        worst = std::max(worst, tile_aging(members));
    }
    return worst;
}

AgingReport HardwareAgingModel::report(const Mapping& mapping) const
{
    require_valid_mapping(mapping, workload_.snn.size(), hw_);
    AgingReport r;
    const int n = hw_.crossbar_dim;
    const auto members = mapping.tile_members(hw_.num_tiles());
    r.per_tile.assign(hw_.num_tiles(), 0.0);
    for (int tile = 0; tile < hw_.num_tiles(); ++tile) {
        std::vector<MechanismAging> ports(n, idle_);
        for (const auto& [port, trace] : port_traces(members[tile])) {
            ports[port] = neuron_aging(trace, hw_.temperature, params_);
        }
        double worst = 0.0;
        for (int port = 0; port < n; ++port) {
            r.per_neuron.push_back({tile, port, ports[port]});
            worst = std::max(worst, ports[port].overall);
        }
        r.per_tile[tile] = worst;
        r.hardware = std::max(r.hardware, worst);
    }
    r.mttf = mttf_from_aging(r.hardware, workload_.snn.workload_window, params_.beta());
    return r;
}

AgingReport evaluate_hardware_aging(const Workload& workload, const Mapping& mapping, const HardwareConfig& hw,
                                    const AgingParams& p)
{
    return HardwareAgingModel(workload, hw, p).report(mapping);
}

} // namespace agemap
