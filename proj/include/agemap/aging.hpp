#pragma once

#include <cstddef>
#include <limits>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "agemap/mapping.hpp"
#include "agemap/model.hpp"
#include "agemap/trace.hpp"
#include "agemap/workload.hpp"

namespace agemap
{

/**
 * Weibull-based time-dependent dielectric breakdown. The lifetime at a fixed
 * overdrive voltage is A * exp(-gamma * sqrt(V)); dividing by Gamma(1 + 1/beta)
 * gives the Weibull scale. Temperature enters through an Arrhenius factor that
 * is 1 at T_ref.
 */
struct TddbParams
{
    double A{1e7};      // seconds
    double gamma{2.0};  // 1/sqrt(V)
    double beta{2.0};   // Weibull slope, shared by every mechanism
    double Ea{0.5};     // eV
    double T_ref{300.0}; // K
};

// Power-law threshold-shift model: g0(T) * (V - V_th)^m * dt^n_exp per segment.
struct PowerLawParams
{
    double g0_ref{1e-4};
    double m{2.0};
    double n_exp{0.5};
    double V_th{1.5}; // volts; segments at or below contribute nothing
    double Ea{0.5};   // eV
};

struct HciParams
{
    bool enabled{false};
    PowerLawParams law{};
};

struct AgingParams
{
    static constexpr double boltzmann = 8.617e-5; // eV/K

    TddbParams tddb{};
    PowerLawParams nbti{};
    HciParams hci{};
    double K{boltzmann};

    double beta() const { return tddb.beta; }

    // Lifetime scaling: A grows by s, the power-law prefactors shrink by s.
    AgingParams scaled(double s) const;

    void check() const;
};

// Weibull scale alpha(V, T) in seconds.
double alpha(double v, double temperature, const AgingParams& p);

double tddb_aging(const VoltageTrace& trace, double temperature, const AgingParams& p);

// Segments are evaluated as given; coalesce the trace first if contiguous
// stress should count as one interval (build_voltage_trace already does).
double nbti_aging(const VoltageTrace& trace, double temperature, const AgingParams& p);

// Zero unless enabled; otherwise the NBTI kernel with the HCI constants.
double hci_aging(const VoltageTrace& trace, double temperature, const AgingParams& p);

/**
 * Sum-of-failure-rates combination of per-mechanism agings:
 *
 *    A = ( ln( sum_k exp(A_k^beta) - (K - 1) ) )^(1/beta),  K = 3
 *
 * i.e. the Weibull cumulative hazards A_k^beta add. A single nonzero input is
 * returned unchanged.
 */
double combine_aging(double a_tddb, double a_nbti, double a_hci, double beta);

// Weibull mean of R(t) = exp(-(t * aging / window)^beta). Zero aging gives +inf.
double mttf_from_aging(double aging, double window, double beta);

/**
 * Reliability of one device over a voltage trace. On segment k the curve is
 * exp(-((t + theta_k) / alpha_k)^beta), with each shift theta_k chosen so the
 * curve is continuous at t_k.
 */
class ReliabilityCurve
{
  public:
    ReliabilityCurve(const VoltageTrace& trace, double temperature, const AgingParams& p);

    double at(double t) const;

    // Limits from either side at the start of segment k (1 <= k < size).
    double left_limit(std::size_t k) const;
    double right_limit(std::size_t k) const;

    double boundary(std::size_t k) const { return starts_.at(k); }
    std::size_t size() const { return starts_.size(); }
    double span() const { return span_; }

  private:
    double eval(std::size_t k, double t) const;

    std::vector<double> starts_;
    std::vector<double> alphas_;
    std::vector<double> shifts_;
    double span_{0.0};
    double beta_{2.0};
};

double reliability_at(const VoltageTrace& trace, double t, double temperature, const AgingParams& p);

struct MechanismAging
{
    double tddb{0.0};
    double nbti{0.0};
    double hci{0.0};
    double overall{0.0};
};

MechanismAging neuron_aging(const VoltageTrace& trace, double temperature, const AgingParams& p);

struct NeuronAging
{
    int tile;
    int neuron; // input port index on the tile's crossbar
    MechanismAging aging;
};

struct AgingReport
{
    std::vector<NeuronAging> per_neuron; // ordered by (tile, neuron)
    std::vector<double> per_tile;
    double hardware{0.0};
    double mttf{std::numeric_limits<double>::infinity()};
};

/**
 * Aging of every input-neuron circuit for a given placement.
 *
 * A tile's input port p is driven by every spike arriving at the tile: the
 * spikes of each cluster placed there and of each of their predecessors.
 * Spike k of a source cluster is emitted by its neuron k mod neuron_count and
 * enters the crossbar on port (neuron mod crossbar_dim). Ports that see no
 * spikes sit at v_idle for the whole window. Tile aging is the maximum over
 * ports and hardware aging the maximum over tiles.
 *
 * Tile results depend only on the set of clusters placed on the tile and are
 * cached on it.
 */
class HardwareAgingModel
{
  public:
    HardwareAgingModel(Workload workload, HardwareConfig hw, AgingParams params);

    const Workload& workload() const { return workload_; }
    const HardwareConfig& hardware() const { return hw_; }
    const AgingParams& params() const { return params_; }

    // Input-port traces for a tile holding `members`; ports without spikes
    // are omitted.
    std::vector<std::pair<int, VoltageTrace>> port_traces(std::span<const std::size_t> members) const;

    double tile_aging(std::span<const std::size_t> members) const;
    double hardware_aging(const Mapping& mapping) const;
    AgingReport report(const Mapping& mapping) const;

    bool has_spikes() const;

  private:
    std::vector<std::size_t> sources_for(std::span<const std::size_t> members) const;

    Workload workload_;
    HardwareConfig hw_;
    AgingParams params_;
    std::vector<std::vector<std::size_t>> predecessors_;
    MechanismAging idle_;

    struct VecHash
    {
        std::size_t operator()(const std::vector<std::size_t>& v) const noexcept;
    };
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::vector<std::size_t>, double, VecHash> tile_cache_;
};

AgingReport evaluate_hardware_aging(const Workload& workload, const Mapping& mapping, const HardwareConfig& hw,
                                    const AgingParams& p);

} // namespace agemap
