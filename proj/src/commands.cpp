#include "agemap/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "agemap/error.hpp"
#include "agemap/report_io.hpp"

namespace agemap
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

RunConfig with_overrides(RunConfig cfg, const RunOptions& opts)
{
    if (opts.seed) {
        cfg.pso.seed = *opts.seed;
    }
    return cfg;
}

fs::path output_dir(const RunConfig& cfg, const RunOptions& opts)
{
    return opts.out_dir ? *opts.out_dir : fs::path(cfg.output_dir);
}

void require_valid_workload(const Workload& w, const HardwareConfig& hw)
{
    auto violations = validate_snn(w.snn, hw);
    if (!violations.empty()) {
        std::vector<std::string> messages;
        for (const auto& v : violations) {
            messages.push_back(std::string(to_string(v.kind)) + ": " + v.message);
        }
        throw InfeasibleError("workload does not fit the hardware: " + messages.front() +
                              (messages.size() > 1 ? " (+" + std::to_string(messages.size() - 1) + " more)" : ""));
    }
    if (w.snn.size() > static_cast<std::size_t>(hw.total_capacity())) {
        throw InfeasibleError("infeasible instance: " + std::to_string(w.snn.size()) +
                              " clusters exceed the total tile capacity of " + std::to_string(hw.total_capacity()));
    }
}

// Tidy long-form rows for external plotting.
struct PlotData
{
    std::ostringstream os;
    PlotData() { os << "experiment,series,x,metric,value\n"; }
    void add(const std::string& exp, const std::string& series, const std::string& x, const std::string& metric,
             double value)
    {
        os << exp << ',' << series << ',' << x << ',' << metric << ',' << format_double(value) << '\n';
    }
};

double ratio(double a, double b)
{
    if (b == 0.0) {
        return a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    if (std::isinf(a) && std::isinf(b)) {
        return 1.0;
    }
    return a / b;
}

} // namespace

std::unique_ptr<FitnessContext> make_context(const RunConfig& cfg, Objective objective)
{
    Workload w = cfg.workload.build();
    require_valid_workload(w, cfg.hardware);
    return std::make_unique<FitnessContext>(std::move(w), cfg.hardware, cfg.aging, cfg.perf, objective);
}

MapResult run_mapping(const FitnessContext& ctx, const PsoConfig& pso, double epsilon)
{
    MapResult r;
    r.pso = pso;
    r.search = optimize(ctx, pso);
    r.selected = select_final(r.search.front, epsilon);
    r.selected_fitness = ctx.evaluate(r.selected.mapping);
    r.report = ctx.aging_model().report(r.selected.mapping);
    return r;
}

CalibrateOutcome cmd_calibrate(const RunConfig& cfg_in, const RunOptions& opts)
{
    const RunConfig cfg = with_overrides(cfg_in, opts);
    Workload w = cfg.workload.build();
    require_valid_workload(w, cfg.hardware);

    CalibrateOutcome out;
    out.baseline = cfg.calibration.baseline ? *cfg.calibration.baseline : first_fit_mapping(w.snn.size(), cfg.hardware);
    out.target_seconds = cfg.calibration.target_mttf_years * seconds_per_year;
    out.calibration = calibrate_baseline(w, out.baseline, cfg.hardware, cfg.aging, out.target_seconds);

    const fs::path dir = output_dir(cfg, opts);
    RunConfig calibrated = cfg;
    calibrated.aging = out.calibration.params;
    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "calibrated_params.json", to_json(out.calibration.params));
    write_json(dir / "calibrated_config.json", to_json(calibrated));
    write_json(dir / "calibration.json",
               json{{"baseline_mapping", to_json(out.baseline)},
                    {"target_mttf_seconds", out.target_seconds},
                    {"achieved_mttf_seconds", out.calibration.achieved_mttf},
                    {"achieved_mttf_years", out.calibration.achieved_mttf / seconds_per_year},
                    {"relative_error", out.calibration.achieved_mttf / out.target_seconds - 1.0},
                    {"scale", out.calibration.scale},
                    {"unchanged", out.calibration.unchanged},
                    {"evaluations", out.calibration.evaluations}});
    return out;
}

MapOutcome cmd_map(const RunConfig& cfg_in, const RunOptions& opts)
{
    const RunConfig cfg = with_overrides(cfg_in, opts);
    const auto start = std::chrono::steady_clock::now();
    auto ctx = make_context(cfg);
    MapOutcome out;
    out.result = run_mapping(*ctx, cfg.pso.resolve(ctx->num_clusters()), cfg.selection_epsilon);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto& r = out.result;
    const fs::path dir = output_dir(cfg, opts);
    const double window = ctx->workload().snn.workload_window;
    const double mttf = mttf_from_aging(r.selected.aging, window, cfg.aging.beta());

    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "mapping.json", json{{"assignment", to_json(r.selected.mapping)},
                                          {"g_best", to_json(r.search.best_mapping)}});
    write_json(dir / "front.json", to_json(r.search.front));
    write_text(dir / "front.csv", front_csv(r.search.front));
    write_text(dir / "archive.csv", archive_csv(r.search.archive));
    write_json(dir / "report.json", to_json(r.report));
    write_text(dir / "report.csv", report_csv(r.report));
    write_json(dir / "summary.json",
               json{{"tau", r.selected_fitness.tau},
                    {"aging", r.selected_fitness.aging},
                    {"lambda", r.selected_fitness.lambda},
                    {"mttf_seconds", json_number(mttf)},
                    {"mttf_years", json_number(mttf / seconds_per_year)},
                    {"mapping", to_json(r.selected.mapping)},
                    {"g_best_lambda", r.search.best_fitness.lambda},
                    {"front_size", r.search.front.size()},
                    {"archive_size", r.search.archive.size()},
                    {"evaluations", r.search.evaluations},
                    {"iterations", r.search.iterations},
                    {"particles", r.pso.n_particles},
                    {"seed", r.pso.seed},
                    {"selection_epsilon", cfg.selection_epsilon}});
    write_text(dir / "timing.txt", "optimization_wall_seconds " + format_double(out.wall_seconds) + "\n");

    if (opts.plot_data) {
        PlotData plot;
        for (std::size_t i = 0; i < r.search.front.size(); ++i) {
            const auto& p = r.search.front.points[i];
            plot.add("front", "pareto", std::to_string(i), "tau", p.tau);
            plot.add("front", "pareto", std::to_string(i), "aging", p.aging);
        }
        write_text(dir / "plot_data.csv", plot.os.str());
    }
    return out;
}

SweepAxis sweep_axis_from_string(const std::string& name)
{
    if (name == "temperature") {
        return SweepAxis::temperature;
    }
    if (name == "device_kind" || name == "device") {
        return SweepAxis::device_kind;
    }
    if (name == "num_tiles" || name == "tiles") {
        return SweepAxis::num_tiles;
    }
    throw ConfigError("unknown sweep axis '" + name + "' (temperature, device_kind, num_tiles)");
}

const char* to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::temperature:
        return "temperature";
    case SweepAxis::device_kind:
        return "device_kind";
    case SweepAxis::num_tiles:
        return "num_tiles";
    }
    return "unknown";
}

RunConfig apply_axis(const RunConfig& cfg, SweepAxis axis, const std::string& value)
{
    RunConfig out = cfg;
    try {
        switch (axis) {
        case SweepAxis::temperature: {
            std::size_t used = 0;
            out.hardware.temperature = std::stod(value, &used);
            if (used != value.size()) {
                throw std::invalid_argument("trailing characters");
            }
            break;
        }
        case SweepAxis::device_kind: {
            const double pulse = cfg.hardware.device.spike_pulse_width;
            out.hardware.device = DeviceProfile::defaults(device_kind_from_string(value));
            out.hardware.device.spike_pulse_width = pulse;
            break;
        }
        case SweepAxis::num_tiles: {
            std::size_t used = 0;
            const int n = std::stoi(value, &used);
            if (used != value.size()) {
                throw std::invalid_argument("trailing characters");
            }
            std::tie(out.hardware.mesh_width, out.hardware.mesh_height) = HardwareConfig::mesh_for(n);
            break;
        }
        }
        out.hardware.check();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("sweep value '") + value + "' for " + to_string(axis) + ": " + e.what());
    }
    return out;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg_in, SweepAxis axis, const std::vector<std::string>& values,
                                const RunOptions& opts)
{
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    const RunConfig cfg = with_overrides(cfg_in, opts);
    std::vector<SweepRow> rows;
    for (const auto& v : values) {
        const RunConfig run = apply_axis(cfg, axis, v);
        auto ctx = make_context(run);
        const MapResult r = run_mapping(*ctx, run.pso.resolve(ctx->num_clusters()), run.selection_epsilon);
        SweepRow row;
        row.value = v;
        row.mapping = r.selected.mapping;
        row.aging = r.selected_fitness.aging;
        row.tau = r.selected_fitness.tau;
        row.lambda = r.selected_fitness.lambda;
        row.mttf = mttf_from_aging(row.aging, ctx->workload().snn.workload_window, run.aging.beta());
        rows.push_back(row);
    }

    const fs::path dir = output_dir(cfg, opts);
    const auto& base = rows.front();
    std::ostringstream os;
    os << "axis,value,aging,mttf,tau,lambda,aging_norm,mttf_norm,tau_norm,assignment\n";
    PlotData plot;
    for (const auto& r : rows) {
        const double an = ratio(r.aging, base.aging), mn = ratio(r.mttf, base.mttf), tn = ratio(r.tau, base.tau);
        os << to_string(axis) << ',' << r.value << ',' << format_double(r.aging) << ',' << format_double(r.mttf) << ','
           << format_double(r.tau) << ',' << format_double(r.lambda) << ',' << format_double(an) << ','
           << format_double(mn) << ',' << format_double(tn) << ',' << r.mapping.to_string() << '\n';
        plot.add(std::string("sweep_") + to_string(axis), "selected", r.value, "aging_norm", an);
        plot.add(std::string("sweep_") + to_string(axis), "selected", r.value, "mttf_norm", mn);
        plot.add(std::string("sweep_") + to_string(axis), "selected", r.value, "tau_norm", tn);
    }
    write_json(dir / "config.json", to_json(cfg));
    write_text(dir / (std::string("sweep_") + to_string(axis) + ".csv"), os.str());
    if (opts.plot_data) {
        write_text(dir / "plot_data.csv", plot.os.str());
    }
    return rows;
}

std::vector<StrategyRow> compare_strategies(const RunConfig& cfg)
{
    auto ctx = make_context(cfg, Objective::aging_time_product);
    auto perf_ctx = make_context(cfg, Objective::time_only);
    const PsoConfig pso = cfg.pso.resolve(ctx->num_clusters());
    const double window = ctx->workload().snn.workload_window;
    const double beta = cfg.aging.beta();

    std::vector<StrategyRow> rows;
    {
        const MapResult r = run_mapping(*ctx, pso, cfg.selection_epsilon);
        const Fitness& f = r.selected_fitness;
        rows.push_back({"reneu_pso", r.selected.mapping, f.tau, f.aging, mttf_from_aging(f.aging, window, beta),
                        f.lambda});
    }
    {
        const OptimizeResult r = optimize(*perf_ctx, pso);
        const Fitness f = ctx->evaluate(r.best_mapping);
        rows.push_back({"perf_only", r.best_mapping, f.tau, f.aging, mttf_from_aging(f.aging, window, beta),
                        f.lambda});
    }
    {
        const auto& hw = ctx->hardware();
        const std::size_t rows_n = ctx->num_clusters();
        Rng rng(pso.seed ^ 0x9e3779b97f4a7c15ULL);
        std::vector<double> taus, agings, lambdas;
        std::vector<double> velocity(rows_n * hw.num_tiles());
        for (int s = 0; s < cfg.random_samples; ++s) {
            for (double& v : velocity) {
                v = rng.uniform(-1.0, 1.0);
            }
            const Mapping m = repair(binarize(velocity, rows_n, hw.num_tiles(), rng), hw);
            const Fitness f = ctx->evaluate(m);
            taus.push_back(f.tau);
            agings.push_back(f.aging);
            lambdas.push_back(f.lambda);
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[(v.size() - 1) / 2];
        };
        const double a = median(agings);
        rows.push_back({"random", std::nullopt, median(taus), a, mttf_from_aging(a, window, beta), median(lambdas)});
    }
    return rows;
}

std::vector<StrategyRow> cmd_compare(const RunConfig& cfg_in, const RunOptions& opts)
{
    const RunConfig cfg = with_overrides(cfg_in, opts);
    auto rows = compare_strategies(cfg);
    const StrategyRow& perf = rows[1];

    std::ostringstream os;
    os << "strategy,tau,aging,mttf,lambda,tau_ratio,aging_ratio,mttf_ratio,assignment\n";
    PlotData plot;
    for (const auto& r : rows) {
        const double tr = ratio(r.tau, perf.tau), ar = ratio(r.aging, perf.aging), mr = ratio(r.mttf, perf.mttf);
        os << r.strategy << ',' << format_double(r.tau) << ',' << format_double(r.aging) << ','
           << format_double(r.mttf) << ',' << format_double(r.lambda) << ',' << format_double(tr) << ','
           << format_double(ar) << ',' << format_double(mr) << ',' << (r.mapping ? r.mapping->to_string() : "")
           << '\n';
        plot.add("compare", r.strategy, "perf_only", "tau_ratio", tr);
        plot.add("compare", r.strategy, "perf_only", "aging_ratio", ar);
        plot.add("compare", r.strategy, "perf_only", "mttf_ratio", mr);
    }
    const fs::path dir = output_dir(cfg, opts);
    write_json(dir / "config.json", to_json(cfg));
    write_text(dir / "compare.csv", os.str());
    if (opts.plot_data) {
        write_text(dir / "plot_data.csv", plot.os.str());
    }
    return rows;
}

bool same_front_objectives(const ParetoFront& a, const ParetoFront& b)
{
    std::set<std::pair<double, double>> pa, pb;
    for (const auto& p : a.points) {
        pa.emplace(p.tau, p.aging);
    }
    for (const auto& p : b.points) {
        pb.emplace(p.tau, p.aging);
    }
    return pa == pb;
}

VerifyOutcome run_verification(const FitnessContext& ctx, const PsoConfig& pso)
{
    VerifyOutcome v;
    v.feasible_mappings = oracle::count_feasible_mappings(ctx.num_clusters(), ctx.hardware());
    v.optimum = oracle::brute_force_optimum(ctx);
    v.oracle_front = oracle::brute_force_pareto(ctx);
    v.search = optimize(ctx, pso);
    v.optimum_matched = v.search.best_fitness.lambda == v.optimum.fitness.lambda;
    v.front_matched = same_front_objectives(v.search.front, v.oracle_front);
    return v;
}

VerifyOutcome cmd_verify(const RunConfig& cfg_in, const RunOptions& opts)
{
    const RunConfig cfg = with_overrides(cfg_in, opts);
    auto ctx = make_context(cfg);
    VerifyOutcome v = run_verification(*ctx, cfg.pso.resolve(ctx->num_clusters()));
    const fs::path dir = output_dir(cfg, opts);
    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "verify.json", json{{"feasible_mappings", v.feasible_mappings},
                                         {"oracle_lambda", v.optimum.fitness.lambda},
                                         {"oracle_mapping", to_json(v.optimum.mapping)},
                                         {"pso_lambda", v.search.best_fitness.lambda},
                                         {"pso_mapping", to_json(v.search.best_mapping)},
                                         {"optimum_matched", v.optimum_matched},
                                         {"oracle_front", to_json(v.oracle_front)},
                                         {"pso_front", to_json(v.search.front)},
                                         {"front_matched", v.front_matched}});
    return v;
}

} // namespace agemap
