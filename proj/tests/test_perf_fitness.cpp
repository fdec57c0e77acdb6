#include <catch_amalgamated.hpp>

#include "agemap/error.hpp"
#include "agemap/fitness.hpp"
#include "agemap/perf.hpp"
#include "support/generators.hpp"

using namespace agemap;
using Catch::Approx;

namespace
{

ClusteredSnn two_clusters(long spikes)
{
    ClusteredSnn snn;
    snn.clusters = {{0, 8, 64}, {1, 8, 64}};
    snn.edges = {{0, 1, spikes}};
    return snn;
}

} // namespace

TEST_CASE("execution time without traffic is the compute term", "[perf]")
{
    ClusteredSnn snn;
    snn.clusters = {{0, 8, 64}, {1, 8, 64}, {2, 8, 64}};
    snn.edges = {{0, 0, 40}, {1, 1, 70}, {2, 2, 10}};
    const auto hw = gen::mesh(3, 1);
    const PerfParams p;
    CHECK(execution_time(snn, Mapping{{0, 1, 2}}, hw, p) == Approx(70 * p.spike_latency).epsilon(1e-15));

    PerfParams serial = p;
    serial.tile_parallelism = false;
    CHECK(execution_time(snn, Mapping{{0, 1, 2}}, hw, serial) == Approx(120 * p.spike_latency).epsilon(1e-15));
}

TEST_CASE("shortening a hot edge saves its hop cost", "[perf]")
{
    const auto snn = two_clusters(500);
    const auto hw = gen::mesh(4, 1);
    const PerfParams p;
    const double far = execution_time(snn, Mapping{{0, 3}}, hw, p);
    const double near = execution_time(snn, Mapping{{0, 1}}, hw, p);
    CHECK(far - near == Approx(500 * 2 * p.hop_latency).epsilon(1e-9));
}

TEST_CASE("empty workload takes no time", "[perf]")
{
    CHECK(execution_time(ClusteredSnn{}, Mapping{}, gen::mesh(2, 2), PerfParams{}) == 0.0);
}

TEST_CASE("invalid mappings are rejected", "[perf]")
{
    const auto snn = two_clusters(5);
    CHECK_THROWS_AS(execution_time(snn, Mapping{{0, 0}}, gen::mesh(2, 1), PerfParams{}), ConstraintError);
    CHECK_THROWS_AS(execution_time(snn, Mapping{{0, 7}}, gen::mesh(2, 1), PerfParams{}), ConstraintError);
    CHECK_THROWS_AS(execution_time(snn, Mapping{{0}}, gen::mesh(2, 1), PerfParams{}), ConstraintError);
}

TEST_CASE("mesh reflection leaves tau unchanged", "[perf][property]")
{
    Rng rng(8);
    const auto hw = gen::mesh(3, 2, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto w = gen::random_workload(rng, 5);
        const auto m = gen::random_mapping(rng, 5, hw);
        Mapping mx = m, my = m;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const int x = m.assignment[i] % hw.mesh_width, y = m.assignment[i] / hw.mesh_width;
            mx.assignment[i] = y * hw.mesh_width + (hw.mesh_width - 1 - x);
            my.assignment[i] = (hw.mesh_height - 1 - y) * hw.mesh_width + x;
        }
        const double tau = execution_time(w.snn, m, hw, PerfParams{});
        CHECK(execution_time(w.snn, mx, hw, PerfParams{}) == tau);
        CHECK(execution_time(w.snn, my, hw, PerfParams{}) == tau);
    }
}

TEST_CASE("tau is monotone in spike counts", "[perf][property]")
{
    Rng rng(9);
    const auto hw = gen::mesh(2, 2, 2);
    for (int trial = 0; trial < 200; ++trial) {
        auto w = gen::random_workload(rng, 5);
        if (w.snn.edges.empty()) {
            continue;
        }
        const auto m = gen::random_mapping(rng, 5, hw);
        const double before = execution_time(w.snn, m, hw, PerfParams{});
        w.snn.edges[rng.below(w.snn.edges.size())].spike_count += 1 + static_cast<long>(rng.below(50));
        CHECK(execution_time(w.snn, m, hw, PerfParams{}) >= before);
    }
}

TEST_CASE("fitness composes tau and aging", "[fitness]")
{
    Workload w;
    w.snn.clusters = {{0, 8, 64}, {1, 8, 64}};
    w.snn.edges = {{0, 1, 0}};
    w.trains = {SpikeTrain({0.1, 0.5, 0.7}), SpikeTrain({0.3})};
    sync_edge_counts(w);
    const auto hw = gen::mesh(2, 1);
    const AgingParams ap;
    const PerfParams pp;
    FitnessContext ctx(w, hw, ap, pp);

    const Mapping m{{1, 0}};
    const Fitness f = ctx.evaluate(m);
    const double tau = execution_time(w.snn, m, hw, pp);
    const double aging = evaluate_hardware_aging(w, m, hw, ap).hardware;
    CHECK(f.tau == tau);
    CHECK(f.aging == aging);
    CHECK(f.lambda == Approx(tau * aging).epsilon(1e-15));
    ctx.evaluate(m);
    CHECK(ctx.distinct_evaluations() == 1);

    FitnessContext perf_only(w, hw, ap, pp, Objective::time_only);
    CHECK(perf_only.evaluate(m).lambda == tau);
}

TEST_CASE("silent workload has zero lambda", "[fitness]")
{
    Workload w;
    w.snn.clusters = {{0, 8, 64}, {1, 8, 64}};
    w.snn.edges = {{0, 1, 0}};
    w.trains = {SpikeTrain{}, SpikeTrain{}};
    AgingParams ap;
    ap.tddb.A = 1e300;
    ap.nbti.g0_ref = 0.0;
    FitnessContext ctx(w, gen::mesh(2, 1), ap, PerfParams{});
    // Idle bias still ages the device a little; with the prefactors
    // switched off the product collapses to zero.
    CHECK(ctx.evaluate(Mapping{{0, 1}}).lambda == Approx(0.0).margin(1e-300));
}

TEST_CASE("halving aging halves lambda", "[fitness]")
{
    Rng rng(4);
    const auto w = gen::random_workload(rng, 3);
    const auto hw = gen::mesh(3, 1);
    AgingParams ap;
    ap.nbti.g0_ref = 0.0;
    FitnessContext a(w, hw, ap, PerfParams{});
    FitnessContext b(w, hw, ap.scaled(2.0), PerfParams{});
    const Mapping m{{2, 0, 1}};
    CHECK(b.evaluate(m).tau == a.evaluate(m).tau);
    CHECK(b.evaluate(m).lambda == Approx(a.evaluate(m).lambda / 2.0).epsilon(1e-14));
}
