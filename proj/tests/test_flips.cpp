#include <catch2/catch_amalgamated.hpp>

#include "perciso/flips.hpp"
#include "perciso/rng.hpp"

using namespace perciso;

TEST_CASE("flip is an involution and differs only at e") {
    const TorusSpec spec(2, 4);
    const Configuration cfg = sample_configuration(spec, 0.5, 3);
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const Configuration f = flip(cfg, e);
        CHECK(f.open(e) != cfg.open(e));
        CHECK(flip(f, e) == cfg);
    }
    Configuration none(spec);
    const Configuration f0 = flip(none, 0);
    CHECK(f0.open_count() == 1);
    CHECK(f0.open(0));
}

TEST_CASE("flips on distinct edges commute") {
    const TorusSpec spec(2, 4);
    const Configuration cfg = sample_configuration(spec, 0.4, 11);
    for (EdgeId e = 0; e < 8; ++e)
        for (EdgeId f = e + 1; f < 8; ++f)
            CHECK(flip(flip(cfg, e), f) == flip(flip(cfg, f), e));
}

TEST_CASE("extremal pair forces e closed/open and is flip-invariant") {
    const TorusSpec spec(2, 4);
    const Configuration cfg = sample_configuration(spec, 0.5, 7);
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const auto [lo, hi] = extremal_pair(cfg, e);
        CHECK_FALSE(lo.open(e));
        CHECK(hi.open(e));
        // agree with cfg elsewhere
        for (EdgeId f = 0; f < spec.edge_count(); ++f) {
            if (f == e) continue;
            CHECK(lo.open(f) == cfg.open(f));
            CHECK(hi.open(f) == cfg.open(f));
        }
        // {omega, omega^e} = {lo, hi}
        const Configuration flipped = flip(cfg, e);
        if (cfg.open(e)) {
            CHECK(lo == flipped);
            CHECK(hi == cfg);
        } else {
            CHECK(lo == cfg);
            CHECK(hi == flipped);
        }
        // invariant under omega -> omega^e
        const auto [lo2, hi2] = extremal_pair(flipped, e);
        CHECK(lo2 == lo);
        CHECK(hi2 == hi);
    }
}

TEST_CASE("grad: constants, giant size, antisymmetry") {
    const TorusSpec spec(2, 4);
    const auto constant = [](const Configuration&) { return 2.5; };
    const auto giant_size = [](const Configuration& w) {
        return static_cast<double>(giant_component(w).size);
    };

    const Configuration cfg = sample_configuration(spec, 0.5, 21);
    for (EdgeId e = 0; e < spec.edge_count(); e += 3) {
        CHECK(grad(constant, cfg, e) == 0.0);
        CHECK(grad(giant_size, cfg, e) == -grad(giant_size, flip(cfg, e), e));
    }

    // |C| gradient: one open edge, flip attaches a third vertex: 2 - 3 = -1
    Configuration one(spec);
    one.set(spec.vertex_index({0, 0}) * 2 + 0, true);
    const EdgeId attach = spec.vertex_index({1, 0}) * 2 + 0;
    CHECK(grad(giant_size, one, attach) == -1.0);
}

TEST_CASE("case classification: table corners") {
    const TorusSpec spec(2, 4);

    // all-open: closing any edge keeps the giant intact -> Case4a
    Configuration all(spec, true);
    const GiantComponent g_all = giant_component(all);
    for (EdgeId e = 0; e < spec.edge_count(); e += 5)
        CHECK(classify_case(all, e, g_all) == FlipCase::Case4a);

    // C = {0,1} via edge 0
    Configuration one(spec);
    one.set(spec.vertex_index({0, 0}) * 2 + 0, true);
    const GiantComponent g1 = giant_component(one);

    // closed edge with both endpoints outside C -> Case1
    const EdgeId far = spec.vertex_index({2, 2}) * 2 + 0;
    CHECK(classify_case(one, far, g1) == FlipCase::Case1);

    // open edge with both endpoints outside C -> Case2
    Configuration with_pair = one;
    with_pair.set(spec.vertex_index({2, 2}) * 2 + 0, true);
    const GiantComponent g2 = giant_component(with_pair);
    REQUIRE(g2.vertices == g1.vertices);  // tie-break keeps {0,1}
    CHECK(classify_case(with_pair, far, g2) == FlipCase::Case2);

    // closed edge with exactly one endpoint in C -> Case5
    const EdgeId attach = spec.vertex_index({1, 0}) * 2 + 0;
    CHECK(classify_case(one, attach, g1) == FlipCase::Case5);

    // closed edge inside C -> Case3
    Configuration square(spec);
    square.set(spec.vertex_index({0, 0}) * 2 + 0, true);  // (0,0)-(1,0)
    square.set(spec.vertex_index({0, 0}) * 2 + 1, true);  // (0,0)-(0,1)
    square.set(spec.vertex_index({1, 0}) * 2 + 1, true);  // (1,0)-(1,1)
    const GiantComponent gs = giant_component(square);
    const EdgeId top = spec.vertex_index({0, 1}) * 2 + 0;  // (0,1)-(1,1), closed
    CHECK(classify_case(square, top, gs) == FlipCase::Case3);

    // open bridge whose removal splits C -> Case4b
    CHECK(classify_case(square, spec.vertex_index({0, 0}) * 2 + 1, gs) == FlipCase::Case4b);
}

TEST_CASE("case 6 never occurs on random configurations") {
    // The full 10^5-pair sweep runs in the acceptance suite; this is the
    // fast regression version.
    for (const double p : {0.3, 0.7}) {
        const TorusSpec spec(2, 5);
        for (std::uint64_t s = 0; s < 40; ++s) {
            const Configuration cfg =
                sample_configuration(spec, p, splitmix_at(505, s) + static_cast<int>(p * 10));
            const GiantComponent g = giant_component(cfg);
            for (EdgeId e = 0; e < spec.edge_count(); ++e)
                CHECK_NOTHROW(classify_case(cfg, e, g));
        }
    }
}
