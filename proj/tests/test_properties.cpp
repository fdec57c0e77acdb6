#include <catch_amalgamated.hpp>

#include <cmath>

#include "agemap/aging.hpp"
#include "agemap/oracle.hpp"
#include "support/generators.hpp"

using namespace agemap;
using Catch::Approx;

TEST_CASE("reliability is continuous at boundaries", "[property]")
{
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        AgingParams p;
        p.tddb.A = std::pow(10.0, rng.uniform(0.5, 3.0));
        const auto tr = gen::random_trace(rng, 2, 10);
        const ReliabilityCurve curve(tr, rng.uniform(280.0, 360.0), p);
        for (std::size_t k = 1; k < curve.size(); ++k) {
            const double l = curve.left_limit(k), r = curve.right_limit(k);
            CHECK(std::abs(l - r) <= 1e-12 * std::max(std::abs(l), std::abs(r)));
            CHECK(l <= 1.0);
        }
    }
}

TEST_CASE("reliability matches a stepwise recursion", "[property]")
{
    Rng rng(102);
    AgingParams p;
    p.tddb.A = 10.0; // short lifetimes so R moves visibly
    for (int trial = 0; trial < 100; ++trial) {
        const auto tr = gen::random_trace(rng, 1, 6, 0.8, 2.0);
        const double t = rng.uniform() * tr.span();
        const double expected = oracle::stepwise_reliability(tr, t, 300.0, p, 8);
        CHECK(reliability_at(tr, t, 300.0, p) == Approx(expected).epsilon(1e-10).margin(1e-300));
    }
}

TEST_CASE("tddb aging is additive over concatenation", "[property]")
{
    Rng rng(103);
    const AgingParams p;
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = gen::random_trace(rng), b = gen::random_trace(rng);
        const double whole = tddb_aging(a.concat(b), 300.0, p);
        CHECK(whole == Approx(tddb_aging(a, 300.0, p) + tddb_aging(b, 300.0, p)).epsilon(1e-14));
    }
}

TEST_CASE("aging rises with voltage", "[property]")
{
    Rng rng(104);
    const AgingParams p;
    for (int trial = 0; trial < 300; ++trial) {
        const auto tr = gen::random_trace(rng);
        std::vector<VoltageSegment> raised(tr.segments().begin(), tr.segments().end());
        raised[rng.below(raised.size())].voltage += rng.uniform(0.01, 1.0);
        const VoltageTrace up(raised);
        CHECK(tddb_aging(up, 300.0, p) > tddb_aging(tr, 300.0, p));
        CHECK(nbti_aging(up, 300.0, p) >= nbti_aging(tr, 300.0, p));
    }
}

TEST_CASE("aging rises with temperature", "[property]")
{
    Rng rng(105);
    const AgingParams p;
    for (int trial = 0; trial < 300; ++trial) {
        const auto tr = gen::random_trace(rng);
        const double a300 = neuron_aging(tr, 300.0, p).overall;
        const double a325 = neuron_aging(tr, 325.0, p).overall;
        const double a350 = neuron_aging(tr, 350.0, p).overall;
        CHECK(a300 < a325);
        CHECK(a325 < a350);
    }
}

TEST_CASE("single-mechanism combination is exact", "[property]")
{
    Rng rng(106);
    for (int trial = 0; trial < 10000; ++trial) {
        const double x = std::pow(10.0, rng.uniform(-12.0, 3.0));
        const double beta = rng.uniform(0.5, 4.0);
        CHECK(combine_aging(x, 0.0, 0.0, beta) == x);
        CHECK(combine_aging(0.0, x, 0.0, beta) == x);
    }
}

TEST_CASE("combined aging dominates every mechanism", "[property]")
{
    Rng rng(107);
    for (int trial = 0; trial < 2000; ++trial) {
        const double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0), c = rng.uniform(0.0, 2.0);
        const double beta = rng.uniform(1.0, 3.0);
        const double all = combine_aging(a, b, c, beta);
        CHECK(all >= std::max({a, b, c}) * (1.0 - 1e-12));
        CHECK(all <= a + b + c + 1e-12);
    }
}

TEST_CASE("mttf is inversely proportional to aging", "[property]")
{
    Rng rng(108);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = std::pow(10.0, rng.uniform(-8.0, 2.0)), k = rng.uniform(0.1, 10.0);
        const double window = rng.uniform(0.1, 100.0), beta = rng.uniform(0.5, 4.0);
        CHECK(mttf_from_aging(a, window, beta) == Approx(k * mttf_from_aging(k * a, window, beta)).epsilon(1e-13));
    }
}

TEST_CASE("busier tile decides hardware aging", "[property]")
{
    Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        // Cluster 0 repeats cluster 1's spikes and adds more; no edges.
        std::vector<double> base;
        for (int i = 0; i < 20; ++i) {
            base.push_back(rng.uniform());
        }
        std::vector<double> busy = base;
        for (int i = 0; i < 20; ++i) {
            busy.push_back(rng.uniform());
        }
        Workload w;
        w.snn.clusters = {{0, 1, 1}, {1, 1, 1}};
        w.trains = {SpikeTrain::from_unsorted(busy), SpikeTrain::from_unsorted(base)};
        auto hw = gen::mesh(2, 1);
        hw.device.spike_pulse_width = 1e-3;
        const auto r = evaluate_hardware_aging(w, Mapping{{0, 1}}, hw, AgingParams{});
        CHECK(r.hardware == r.per_tile[0]);
        CHECK(r.per_tile[0] >= r.per_tile[1]);
    }
}
