#include "agemap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "agemap/error.hpp"

namespace agemap
{

using nlohmann::json;

namespace
{

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class ObjectReader
{
  public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError(path_ + ": expected an object");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& child(const std::string& key)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            throw ConfigError(at(key) + ": missing required field");
        }
        return j_.at(key);
    }

    template <class T>
    T required(const std::string& key)
    {
        return convert<T>(child(key), at(key));
    }

    template <class T>
    T optional(const std::string& key, T fallback)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        return convert<T>(j_.at(key), at(key));
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const
    {
        for (const auto& item : j_.items()) {
            if (!seen_.contains(item.key())) {
                throw ConfigError(at(item.key()) + ": unknown key");
            }
        }
    }

    template <class T>
    static T convert(const json& v, const std::string& where)
    {
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) {
                    throw ConfigError(where + ": expected a number");
                }
            } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                if (!v.is_number_integer()) {
                    throw ConfigError(where + ": expected an integer");
                }
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) {
                    throw ConfigError(where + ": expected true or false");
                }
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) {
                    throw ConfigError(where + ": expected a string");
                }
            }
            return v.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class Fn>
void checked(const std::string& where, Fn&& fn)
{
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

DeviceProfile parse_device(const json& j, const std::string& path)
{
    ObjectReader r(j, path);
    DeviceKind kind = DeviceKind::diode_1D1R;
    checked(r.at("kind"), [&] { kind = device_kind_from_string(r.optional<std::string>("kind", "diode_1D1R")); });
    DeviceProfile d = DeviceProfile::defaults(kind);
    d.v_active = r.optional("v_active", d.v_active);
    d.v_idle = r.optional("v_idle", d.v_idle);
    d.spike_pulse_width = r.optional("spike_pulse_width", d.spike_pulse_width);
    r.finish();
    return d;
}

HardwareConfig parse_hardware(const json& j)
{
    ObjectReader r(j, "hardware");
    HardwareConfig hw;
    if (r.has("num_tiles")) {
        if (r.has("mesh_width") || r.has("mesh_height")) {
            throw ConfigError("hardware.num_tiles: give either num_tiles or mesh_width/mesh_height, not both");
        }
        const int n = r.required<int>("num_tiles");
        checked(r.at("num_tiles"), [&] { std::tie(hw.mesh_width, hw.mesh_height) = HardwareConfig::mesh_for(n); });
    } else {
        hw.mesh_width = r.required<int>("mesh_width");
        hw.mesh_height = r.required<int>("mesh_height");
    }
    hw.crossbar_dim = r.optional("crossbar_dim", hw.crossbar_dim);
    hw.tile_capacity = r.optional("tile_capacity", hw.tile_capacity);
    hw.temperature = r.optional("temperature", hw.temperature);
    if (r.has("device")) {
        hw.device = parse_device(r.child("device"), "hardware.device");
    }
    r.finish();
    checked("hardware", [&] { hw.check(); });
    return hw;
}

PowerLawParams parse_power_law(ObjectReader& r, PowerLawParams law)
{
    law.g0_ref = r.optional("g0_ref", law.g0_ref);
    law.m = r.optional("m", law.m);
    law.n_exp = r.optional("n_exp", law.n_exp);
    law.V_th = r.optional("V_th", law.V_th);
    law.Ea = r.optional("Ea", law.Ea);
    return law;
}

PerfParams parse_perf(const json& j)
{
    ObjectReader r(j, "perf");
    PerfParams p;
    p.spike_latency = r.optional("spike_latency", p.spike_latency);
    p.hop_latency = r.optional("hop_latency", p.hop_latency);
    p.tile_parallelism = r.optional("tile_parallelism", p.tile_parallelism);
    r.finish();
    checked("perf", [&] { p.check(); });
    return p;
}

PsoSpec parse_pso(const json& j)
{
    ObjectReader r(j, "pso");
    PsoSpec s;
    if (r.has("particles")) {
        s.particles = r.required<int>("particles");
    }
    if (r.has("iterations")) {
        s.iterations = r.required<int>("iterations");
    }
    s.phi1 = r.optional("phi1", s.phi1);
    s.phi2 = r.optional("phi2", s.phi2);
    s.seed = r.optional<std::uint64_t>("seed", s.seed);
    s.v_clamp = r.optional("v_clamp", s.v_clamp);
    r.finish();
    checked("pso", [&] { s.resolve(1).check(); });
    return s;
}

WorkloadSpec parse_workload(const json& j)
{
    ObjectReader r(j, "workload");
    WorkloadSpec spec;
    spec.window = r.required<double>("window");
    if (!(spec.window > 0.0)) {
        throw ConfigError("workload.window: must be positive");
    }

    if (r.has("generate")) {
        if (r.has("clusters") || r.has("edges") || r.has("spike_trains")) {
            throw ConfigError("workload.generate: cannot be combined with explicit clusters/edges/spike_trains");
        }
        ObjectReader g(r.child("generate"), "workload.generate");
        WorkloadSpec::Generated gen;
        checked(g.at("shape"), [&] { gen.shape.kind = shape_kind_from_string(g.required<std::string>("shape")); });
        gen.shape.layers = g.required<std::vector<int>>("layers");
        gen.shape.neurons_per_cluster = g.optional("neurons_per_cluster", gen.shape.neurons_per_cluster);
        gen.shape.edge_probability = g.optional("edge_probability", gen.shape.edge_probability);
        gen.shape.rate_spread = g.optional("rate_spread", gen.shape.rate_spread);
        gen.rate = g.required<double>("rate");
        gen.seed = g.optional<std::uint64_t>("seed", gen.seed);
        g.finish();
        spec.generated = gen;
        r.finish();
        checked("workload.generate", [&] { spec.build(); });
        return spec;
    }

    Workload w;
    w.snn.workload_window = spec.window;
    const json& clusters = r.child("clusters");
    if (!clusters.is_array()) {
        throw ConfigError("workload.clusters: expected an array");
    }
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        ObjectReader c(clusters[i], "workload.clusters[" + std::to_string(i) + "]");
        Cluster cl;
        cl.id = c.required<int>("id");
        cl.neuron_count = c.required<int>("neurons");
        cl.synapse_count = c.optional<long>("synapses", static_cast<long>(cl.neuron_count) * cl.neuron_count);
        c.finish();
        if (w.snn.index_of(cl.id)) {
            throw ConfigError(c.at("id") + ": duplicate cluster id " + std::to_string(cl.id));
        }
        w.snn.clusters.push_back(cl);
    }

    std::vector<bool> explicit_count;
    if (r.has("edges")) {
        const json& edges = r.child("edges");
        if (!edges.is_array()) {
            throw ConfigError("workload.edges: expected an array");
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            ObjectReader e(edges[i], "workload.edges[" + std::to_string(i) + "]");
            Edge edge;
            edge.src_cluster = e.required<int>("src");
            edge.dst_cluster = e.required<int>("dst");
            explicit_count.push_back(e.has("spike_count"));
            edge.spike_count = e.optional<long>("spike_count", 0);
            e.finish();
            w.snn.edges.push_back(edge);
        }
    }

    w.trains.resize(w.snn.size());
    if (r.has("spike_trains")) {
        ObjectReader t(r.child("spike_trains"), "workload.spike_trains");
        for (std::size_t i = 0; i < w.snn.size(); ++i) {
            const std::string key = std::to_string(w.snn.clusters[i].id);
            if (!t.has(key)) {
                continue;
            }
            auto times = t.required<std::vector<double>>(key);
            for (double x : times) {
                if (!(x >= 0.0) || !(x < spec.window)) {
                    throw ConfigError(t.at(key) + ": spike times must lie in [0, window)");
                }
            }
            checked(t.at(key), [&] { w.trains[i] = SpikeTrain(std::move(times)); });
        }
        t.finish();
    }
    r.finish();

    for (std::size_t i = 0; i < w.snn.edges.size(); ++i) {
        if (explicit_count[i]) {
            continue;
        }
        auto src = w.snn.index_of(w.snn.edges[i].src_cluster);
        w.snn.edges[i].spike_count = src ? static_cast<long>(w.trains[*src].size()) : 0;
    }
    spec.explicit_workload = std::move(w);
    return spec;
}

CalibrationSpec parse_calibration(const json& j)
{
    ObjectReader r(j, "calibration");
    CalibrationSpec c;
    c.target_mttf_years = r.optional("target_mttf_years", c.target_mttf_years);
    if (!(c.target_mttf_years > 0.0)) {
        throw ConfigError("calibration.target_mttf_years: must be positive");
    }
    if (r.has("baseline")) {
        c.baseline = Mapping{r.required<std::vector<int>>("baseline")};
    }
    r.finish();
    return c;
}

} // namespace

Workload WorkloadSpec::build() const
{
    if (generated) {
        return generate_poisson_workload(generated->shape, generated->rate, window, generated->seed);
    }
    if (explicit_workload) {
        return *explicit_workload;
    }
    throw ConfigError("workload: neither explicit clusters nor a generator given");
}

PsoConfig PsoSpec::resolve(std::size_t num_clusters) const
{
    PsoConfig cfg = PsoConfig::defaults_for(num_clusters);
    if (particles) {
        cfg.n_particles = *particles;
    }
    if (iterations) {
        cfg.max_iterations = *iterations;
    }
    cfg.phi1 = phi1;
    cfg.phi2 = phi2;
    cfg.seed = seed;
    cfg.v_clamp = v_clamp;
    return cfg;
}

AgingParams parse_aging_params(const json& doc, const std::string& path)
{
    ObjectReader r(doc, path);
    AgingParams p;
    if (r.has("tddb")) {
        ObjectReader t(r.child("tddb"), path + ".tddb");
        p.tddb.A = t.optional("A", p.tddb.A);
        p.tddb.gamma = t.optional("gamma", p.tddb.gamma);
        p.tddb.beta = t.optional("beta", p.tddb.beta);
        p.tddb.Ea = t.optional("Ea", p.tddb.Ea);
        p.tddb.T_ref = t.optional("T_ref", p.tddb.T_ref);
        t.finish();
    }
    if (r.has("nbti")) {
        ObjectReader n(r.child("nbti"), path + ".nbti");
        p.nbti = parse_power_law(n, p.nbti);
        n.finish();
    }
    if (r.has("hci")) {
        ObjectReader h(r.child("hci"), path + ".hci");
        p.hci.enabled = h.optional("enabled", p.hci.enabled);
        p.hci.law = parse_power_law(h, p.hci.law);
        h.finish();
    }
    p.K = r.optional("K", p.K);
    r.finish();
    checked(path, [&] { p.check(); });
    return p;
}

RunConfig parse_run_config(const json& doc)
{
    ObjectReader r(doc, "");
    RunConfig cfg;
    cfg.hardware = parse_hardware(r.child("hardware"));
    cfg.workload = parse_workload(r.child("workload"));
    if (r.has("aging")) {
        cfg.aging = parse_aging_params(r.child("aging"));
    }
    if (r.has("perf")) {
        cfg.perf = parse_perf(r.child("perf"));
    }
    if (r.has("pso")) {
        cfg.pso = parse_pso(r.child("pso"));
    }
    if (r.has("calibration")) {
        cfg.calibration = parse_calibration(r.child("calibration"));
    }
    if (r.has("compare")) {
        ObjectReader c(r.child("compare"), "compare");
        cfg.random_samples = c.optional("random_samples", cfg.random_samples);
        c.finish();
        if (cfg.random_samples < 1) {
            throw ConfigError("compare.random_samples: must be >= 1");
        }
    }
    cfg.selection_epsilon = r.optional("selection_epsilon", cfg.selection_epsilon);
    if (!(cfg.selection_epsilon >= 0.0)) {
        throw ConfigError("selection_epsilon: must be >= 0");
    }
    cfg.output_dir = r.optional<std::string>("output_dir", cfg.output_dir);
    r.finish();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_run_config(doc);
}

json to_json(const AgingParams& p)
{
    auto law = [](const PowerLawParams& l) {
        return json{{"g0_ref", l.g0_ref}, {"m", l.m}, {"n_exp", l.n_exp}, {"V_th", l.V_th}, {"Ea", l.Ea}};
    };
    json hci = law(p.hci.law);
    hci["enabled"] = p.hci.enabled;
    return json{{"tddb",
                 {{"A", p.tddb.A},
                  {"gamma", p.tddb.gamma},
                  {"beta", p.tddb.beta},
                  {"Ea", p.tddb.Ea},
                  {"T_ref", p.tddb.T_ref}}},
                {"nbti", law(p.nbti)},
                {"hci", hci},
                {"K", p.K}};
}

json to_json(const HardwareConfig& hw)
{
    return json{{"mesh_width", hw.mesh_width},
                {"mesh_height", hw.mesh_height},
                {"crossbar_dim", hw.crossbar_dim},
                {"tile_capacity", hw.tile_capacity},
                {"temperature", hw.temperature},
                {"device",
                 {{"kind", to_string(hw.device.kind)},
                  {"v_active", hw.device.v_active},
                  {"v_idle", hw.device.v_idle},
                  {"spike_pulse_width", hw.device.spike_pulse_width}}}};
}

json to_json(const RunConfig& cfg)
{
    json pso{{"phi1", cfg.pso.phi1}, {"phi2", cfg.pso.phi2}, {"seed", cfg.pso.seed}, {"v_clamp", cfg.pso.v_clamp}};
    if (cfg.pso.particles) {
        pso["particles"] = *cfg.pso.particles;
    }
    if (cfg.pso.iterations) {
        pso["iterations"] = *cfg.pso.iterations;
    }

    json workload{{"window", cfg.workload.window}};
    if (cfg.workload.generated) {
        const auto& g = *cfg.workload.generated;
        workload["generate"] = json{{"shape", to_string(g.shape.kind)},
                                    {"layers", g.shape.layers},
                                    {"neurons_per_cluster", g.shape.neurons_per_cluster},
                                    {"edge_probability", g.shape.edge_probability},
                                    {"rate_spread", g.shape.rate_spread},
                                    {"rate", g.rate},
                                    {"seed", g.seed}};
    } else if (cfg.workload.explicit_workload) {
        const auto& w = *cfg.workload.explicit_workload;
        json clusters = json::array(), edges = json::array(), trains = json::object();
        for (std::size_t i = 0; i < w.snn.size(); ++i) {
            const auto& c = w.snn.clusters[i];
            clusters.push_back({{"id", c.id}, {"neurons", c.neuron_count}, {"synapses", c.synapse_count}});
            if (!w.trains[i].empty()) {
                trains[std::to_string(c.id)] = w.trains[i].times();
            }
        }
        for (const auto& e : w.snn.edges) {
            edges.push_back({{"src", e.src_cluster}, {"dst", e.dst_cluster}, {"spike_count", e.spike_count}});
        }
        workload["clusters"] = clusters;
        workload["edges"] = edges;
        workload["spike_trains"] = trains;
    }

    json calibration{{"target_mttf_years", cfg.calibration.target_mttf_years}};
    if (cfg.calibration.baseline) {
        calibration["baseline"] = cfg.calibration.baseline->assignment;
    }

    return json{{"hardware", to_json(cfg.hardware)},
                {"aging", to_json(cfg.aging)},
                {"perf",
                 {{"spike_latency", cfg.perf.spike_latency},
                  {"hop_latency", cfg.perf.hop_latency},
                  {"tile_parallelism", cfg.perf.tile_parallelism}}},
                {"pso", pso},
                {"workload", workload},
                {"calibration", calibration},
                {"compare", {{"random_samples", cfg.random_samples}}},
                {"selection_epsilon", cfg.selection_epsilon},
                {"output_dir", cfg.output_dir}};
}

} // namespace agemap
