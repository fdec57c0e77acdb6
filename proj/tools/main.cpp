#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agemap/commands.hpp"
#include "agemap/error.hpp"
#include "agemap/report_io.hpp"

using namespace agemap;

namespace
{

std::vector<std::string> split_values(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string years(double seconds)
{
    return format_double(seconds / seconds_per_year) + " years";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"agemap: aging-aware mapping of clustered SNN workloads onto crossbar tiles"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool plot_data = false;
    std::string axis_name;
    std::string values_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("-s,--seed", seed, "PSO seed override");
        sub->add_flag("--plot-data", plot_data, "also write tidy plot_data.csv");
    };

    auto* calibrate = app.add_subcommand("calibrate", "scale aging constants so the baseline mapping hits the MTTF target");
    auto* map = app.add_subcommand("map", "optimize the mapping and write the front and aging report");
    auto* sweep = app.add_subcommand("sweep", "re-run the mapping along one hardware axis");
    auto* compare = app.add_subcommand("compare", "compare reneu_pso, perf_only and random strategies");
    auto* verify = app.add_subcommand("verify", "check the optimizer against brute-force enumeration");
    for (auto* sub : {calibrate, map, sweep, compare, verify}) {
        add_common(sub);
    }
    sweep->add_option("--axis", axis_name, "temperature | device_kind | num_tiles")->required();
    sweep->add_option("--values", values_text, "comma separated axis values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_run_config(config_path);
        RunOptions opts;
        if (!out_dir.empty()) {
            opts.out_dir = out_dir;
        }
        if (*app.get_subcommands().front()->get_option("--seed")) {
            opts.seed = seed;
        }
        opts.plot_data = plot_data;

        if (calibrate->parsed()) {
            const auto r = cmd_calibrate(cfg, opts);
            std::cout << "achieved MTTF: " << years(r.calibration.achieved_mttf) << " (target "
                      << years(r.target_seconds) << ")\n"
                      << "scale: " << format_double(r.calibration.scale)
                      << (r.calibration.unchanged ? " (already calibrated)" : "") << '\n';
        } else if (map->parsed()) {
            const auto r = cmd_map(cfg, opts);
            const auto& f = r.result.selected_fitness;
            std::cout << "mapping: " << r.result.selected.mapping.to_string() << '\n'
                      << "tau: " << format_double(f.tau) << " s, aging: " << format_double(f.aging)
                      << ", MTTF: " << years(r.result.report.mttf) << '\n'
                      << "front: " << r.result.search.front.size() << " points, archive: "
                      << r.result.search.archive.size() << " mappings, "
                      << format_double(r.wall_seconds) << " s\n";
        } else if (sweep->parsed()) {
            const SweepAxis axis = sweep_axis_from_string(axis_name);
            const auto rows = cmd_sweep(cfg, axis, split_values(values_text), opts);
            for (const auto& row : rows) {
                std::cout << to_string(axis) << '=' << row.value << " aging=" << format_double(row.aging)
                          << " mttf=" << years(row.mttf) << " tau=" << format_double(row.tau) << '\n';
            }
        } else if (compare->parsed()) {
            for (const auto& row : cmd_compare(cfg, opts)) {
                std::cout << row.strategy << ": tau=" << format_double(row.tau)
                          << " aging=" << format_double(row.aging) << " mttf=" << years(row.mttf) << '\n';
            }
        } else if (verify->parsed()) {
            const auto v = cmd_verify(cfg, opts);
            std::cout << "feasible mappings: " << format_double(v.feasible_mappings) << '\n'
                      << "optimum lambda: " << format_double(v.optimum.fitness.lambda)
                      << (v.optimum_matched ? " (matched)" : " (missed)") << '\n'
                      << "front: " << (v.front_matched ? "matched" : "differs") << '\n';
            return v.optimum_matched ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 4;
    } catch (const ConstraintError& e) {
        std::cerr << "constraint violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
