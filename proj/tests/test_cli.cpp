#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agemap/commands.hpp"
#include "agemap/error.hpp"
#include "agemap/report_io.hpp"
#include "support/generators.hpp"

using namespace agemap;
using nlohmann::json;
using Catch::Approx;
namespace fs = std::filesystem;

namespace
{

json small_doc()
{
    return json::parse(R"({
      "hardware": { "mesh_width": 2, "mesh_height": 2, "tile_capacity": 2 },
      "workload": {
        "window": 1.0,
        "generate": { "shape": "random", "layers": [4], "neurons_per_cluster": 32,
                      "edge_probability": 0.6, "rate_spread": 0.5, "rate": 60.0, "seed": 7 }
      },
      "pso": { "particles": 20, "iterations": 20, "seed": 3 }
    })");
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("agemap_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string config_error(const json& doc)
{
    try {
        parse_run_config(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("config errors name the field", "[config]")
{
    auto doc = small_doc();
    doc["workload"].erase("window");
    CHECK_THAT(config_error(doc), Catch::Matchers::ContainsSubstring("workload.window"));

    doc = small_doc();
    doc.erase("hardware");
    CHECK_THAT(config_error(doc), Catch::Matchers::ContainsSubstring("hardware"));

    doc = small_doc();
    doc["pso"]["particels"] = 3;
    CHECK_THAT(config_error(doc), Catch::Matchers::ContainsSubstring("pso.particels"));

    doc = small_doc();
    doc["hardware"]["tile_capacity"] = "two";
    CHECK_THAT(config_error(doc), Catch::Matchers::ContainsSubstring("hardware.tile_capacity"));

    doc = small_doc();
    doc["aging"] = {{"tddb", {{"beta", -1.0}}}};
    CHECK_THAT(config_error(doc), Catch::Matchers::ContainsSubstring("aging"));

    CHECK_THROWS_AS(load_run_config("/nonexistent/agemap.json"), ConfigError);
}

TEST_CASE("explicit workloads", "[config]")
{
    const auto doc = json::parse(R"({
      "hardware": { "num_tiles": 2 },
      "workload": {
        "window": 0.5,
        "clusters": [ { "id": 10, "neurons": 4, "synapses": 16 }, { "id": 20, "neurons": 4, "synapses": 16 } ],
        "edges": [ { "src": 10, "dst": 20 } ],
        "spike_trains": { "10": [0.1, 0.2], "20": [] }
      }
    })");
    const auto cfg = parse_run_config(doc);
    const auto w = cfg.workload.build();
    REQUIRE(w.snn.size() == 2);
    CHECK(w.snn.workload_window == 0.5);
    CHECK(w.snn.edges[0].spike_count == 2);
    CHECK(w.trains[0].size() == 2);
    CHECK(cfg.hardware.num_tiles() == 2);

    auto bad = doc;
    bad["workload"]["spike_trains"]["30"] = json::array();
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);
}

TEST_CASE("config round trip", "[config][property]")
{
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto doc = small_doc();
        doc["hardware"]["temperature"] = rng.uniform(250.0, 400.0);
        doc["hardware"]["crossbar_dim"] = 32 + static_cast<int>(rng.below(200));
        doc["aging"]["tddb"]["A"] = std::pow(10.0, rng.uniform(3.0, 12.0));
        doc["aging"]["nbti"]["V_th"] = rng.uniform(0.5, 2.0);
        doc["perf"]["hop_latency"] = rng.uniform(1e-8, 1e-6);
        doc["pso"]["phi1"] = rng.uniform(0.0, 3.0);
        doc["selection_epsilon"] = rng.uniform(0.0, 0.5);
        const auto cfg = parse_run_config(doc);
        const auto echoed = to_json(cfg);
        CHECK(to_json(parse_run_config(echoed)) == echoed);
    }
}

TEST_CASE("map writes a consistent summary", "[cli]")
{
    const auto cfg = parse_run_config(small_doc());
    RunOptions opts;
    opts.out_dir = scratch("map");
    const auto out = cmd_map(cfg, opts);

    const auto summary = json::parse(slurp(*opts.out_dir / "summary.json"));
    const double aging = summary["aging"];
    CHECK(summary["mttf_seconds"].get<double>() == mttf_from_aging(aging, 1.0, 2.0));
    CHECK(summary["lambda"].get<double>() == Approx(summary["tau"].get<double>() * aging).epsilon(1e-15));

    // Same pipeline through the library.
    auto ctx = make_context(cfg);
    const auto direct = optimize(*ctx, cfg.pso.resolve(ctx->num_clusters()));
    CHECK(slurp(*opts.out_dir / "archive.csv") == archive_csv(direct.archive));
    CHECK(slurp(*opts.out_dir / "front.csv") == front_csv(direct.front));
    CHECK(out.result.search.best_mapping == direct.best_mapping);

    for (const char* f : {"mapping.json", "front.json", "report.json", "report.csv", "config.json", "timing.txt"}) {
        CHECK(fs::exists(*opts.out_dir / f));
    }
    CHECK(parse_run_config(json::parse(slurp(*opts.out_dir / "config.json"))).pso.seed == 3);
}

TEST_CASE("seed override and determinism", "[cli]")
{
    const auto cfg = parse_run_config(small_doc());
    RunOptions a, b;
    a.out_dir = scratch("det_a");
    b.out_dir = scratch("det_b");
    a.seed = b.seed = 99;
    a.plot_data = b.plot_data = true;
    cmd_map(cfg, a);
    cmd_map(cfg, b);
    for (const auto& entry : fs::directory_iterator(*a.out_dir)) {
        const auto name = entry.path().filename();
        if (name == "timing.txt") {
            continue;
        }
        CHECK(slurp(entry.path()) == slurp(*b.out_dir / name));
    }
    CHECK(json::parse(slurp(*a.out_dir / "summary.json"))["seed"] == 99);
}

TEST_CASE("calibrate command", "[cli]")
{
    auto cfg = parse_run_config(small_doc());
    RunOptions opts;
    opts.out_dir = scratch("cal");
    const auto r = cmd_calibrate(cfg, opts);
    CHECK(r.calibration.achieved_mttf == Approx(2.0 * seconds_per_year).epsilon(1e-3));
    CHECK(fs::exists(*opts.out_dir / "calibrated_params.json"));

    const auto calibrated = load_run_config(*opts.out_dir / "calibrated_config.json");
    CHECK(cmd_calibrate(calibrated, opts).calibration.unchanged);

    auto silent = small_doc();
    silent["workload"]["generate"]["rate"] = 0.0;
    CHECK_THROWS_AS(cmd_calibrate(parse_run_config(silent), opts), InfeasibleError);
}

TEST_CASE("infeasible instances", "[cli]")
{
    auto doc = small_doc();
    doc["hardware"]["tile_capacity"] = 1;
    doc["hardware"]["mesh_width"] = 1;
    CHECK_THROWS_AS(make_context(parse_run_config(doc)), InfeasibleError);

    doc = small_doc();
    doc["hardware"]["crossbar_dim"] = 16;
    CHECK_THROWS_AS(make_context(parse_run_config(doc)), InfeasibleError);
}

TEST_CASE("sweep rows", "[cli]")
{
    const auto cfg = parse_run_config(small_doc());
    RunOptions opts;
    opts.out_dir = scratch("sweep");
    const auto rows = cmd_sweep(cfg, SweepAxis::temperature, {"300", "325", "350"}, opts);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].aging < rows[1].aging);
    CHECK(rows[1].aging < rows[2].aging);
    CHECK(fs::exists(*opts.out_dir / "sweep_temperature.csv"));

    const auto dev = cmd_sweep(cfg, SweepAxis::device_kind, {"diode", "transistor"}, opts);
    CHECK(dev[1].aging < dev[0].aging);

    CHECK_THROWS_AS(apply_axis(cfg, SweepAxis::temperature, "hot"), ConfigError);
    CHECK_THROWS_AS(sweep_axis_from_string("voltage"), ConfigError);
    CHECK(apply_axis(cfg, SweepAxis::num_tiles, "9").hardware.num_tiles() == 9);
}

TEST_CASE("strategy comparison", "[cli]")
{
    auto doc = small_doc();
    const auto rows = compare_strategies(parse_run_config(doc));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].strategy == "reneu_pso");
    CHECK(rows[1].strategy == "perf_only");
    CHECK(rows[2].strategy == "random");
    CHECK(rows[0].aging <= rows[1].aging);
    CHECK_FALSE(rows[2].mapping.has_value());

    // perf_only never looks at aging constants.
    doc["aging"]["tddb"]["A"] = 3.5e4;
    doc["aging"]["nbti"]["g0_ref"] = 0.2;
    const auto swapped = compare_strategies(parse_run_config(doc));
    CHECK(swapped[1].mapping == rows[1].mapping);
}
