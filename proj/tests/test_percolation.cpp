#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "perciso/percolation.hpp"

using namespace perciso;

namespace {

// Independent re-derivation of the per-edge randomness: same published
// algebra, separate code path, used as the sampling oracle.
std::uint64_t oracle_mix(std::uint64_t x) {
    const std::uint64_t mul1 = 0xBF58476D1CE4E5B9ULL;
    const std::uint64_t mul2 = 0x94D049BB133111EBULL;
    x = (x ^ (x >> 30)) * mul1;
    x = (x ^ (x >> 27)) * mul2;
    return x ^ (x >> 31);
}

std::string oracle_bits(int d, int n, double p, std::uint64_t seed) {
    const TorusSpec spec(d, n);
    std::string out;
    std::uint64_t counter = seed;
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        counter += 0x9E3779B97F4A7C15ULL;
        const std::uint64_t z = oracle_mix(counter);
        const double u = static_cast<double>(z >> 11) / 9007199254740992.0;  // 2^53
        out.push_back(u < p ? '1' : '0');
    }
    return out;
}

std::string sampled_bits(int d, int n, double p, std::uint64_t seed) {
    const TorusSpec spec(d, n);
    const Configuration cfg = sample_configuration(spec, p, seed);
    std::string out;
    for (EdgeId e = 0; e < spec.edge_count(); ++e) out.push_back(cfg.open(e) ? '1' : '0');
    return out;
}

}  // namespace

TEST_CASE("sampling matches the SplitMix64 oracle bit-exactly") {
    // frozen oracle outputs
    CHECK(sampled_bits(2, 4, 0.5, 1) == "00011000101010110000111111001000");
    CHECK(sampled_bits(2, 4, 0.3, 9) == "00101100100101000100010000010001");
    CHECK(sampled_bits(2, 5, 0.7, 77) == "11110101111101111111111111111110100111111111110111");
    // oracle equivalence across a seed range
    for (std::uint64_t seed : {0ULL, 2ULL, 123456789ULL, 0xFFFFFFFFFFFFFFFFULL}) {
        CHECK(sampled_bits(2, 4, 0.5, seed) == oracle_bits(2, 4, 0.5, seed));
        CHECK(sampled_bits(3, 3, 0.42, seed) == oracle_bits(3, 3, 0.42, seed));
    }
}

TEST_CASE("degenerate probabilities") {
    const TorusSpec spec(2, 4);
    const Configuration all = sample_configuration(spec, 1.0, 5);
    const Configuration none = sample_configuration(spec, 0.0, 5);
    CHECK(all.open_count() == spec.edge_count());
    CHECK(none.open_count() == 0);
    CHECK_THROWS_AS(sample_configuration(spec, 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_configuration(spec, -0.1, 0), std::invalid_argument);
}

TEST_CASE("sampling is deterministic in (spec, p, seed)") {
    const TorusSpec spec(2, 7);
    const Configuration a = sample_configuration(spec, 0.7, 99);
    const Configuration b = sample_configuration(spec, 0.7, 99);
    CHECK(a == b);
    const Configuration c = sample_configuration(spec, 0.7, 100);
    CHECK_FALSE(a == c);
}

TEST_CASE("empirical open fraction within 3 standard errors") {
    const TorusSpec spec(2, 224);  // 2*224^2 = 100352 edges
    const double p = 0.37;
    const Configuration cfg = sample_configuration(spec, p, 2024);
    const double m = static_cast<double>(spec.edge_count());
    const double frac = static_cast<double>(cfg.open_count()) / m;
    const double se = std::sqrt(p * (1 - p) / m);
    CHECK(std::abs(frac - p) <= 3 * se);
}

TEST_CASE("cluster decomposition basics") {
    const TorusSpec spec(2, 4);
    Configuration all(spec, true);
    auto dec = cluster_decomposition(all);
    CHECK(dec.sizes.size() == 1);
    CHECK(dec.sizes.at(0) == 16);

    Configuration none(spec);
    dec = cluster_decomposition(none);
    CHECK(dec.sizes.size() == 16);
    std::int64_t total = 0;
    for (const auto& [id, sz] : dec.sizes) total += sz;
    CHECK(total == spec.vertex_count());

    Configuration one(spec);
    one.set(0, true);  // (0,0)-(1,0)
    dec = cluster_decomposition(one);
    CHECK(dec.sizes.at(0) == 2);
    CHECK(dec.sizes.size() == 15);
    CHECK(dec.label[0] == dec.label[1]);
}

TEST_CASE("giant component and its tie-break") {
    const TorusSpec spec(2, 4);
    Configuration all(spec, true);
    CHECK(giant_component(all).size == 16);

    // two open pairs of equal size: smallest vertex id wins
    Configuration two(spec);
    two.set(spec.vertex_index({0, 0}) * 2 + 0, true);  // (0,0)-(1,0)
    two.set(spec.vertex_index({2, 0}) * 2 + 0, true);  // (2,0)-(3,0)
    const GiantComponent g = giant_component(two);
    CHECK(g.size == 2);
    CHECK(g.vertices == std::vector<VertexId>{0, 1});

    // all closed: the singleton {vertex 0}
    Configuration none(spec);
    const GiantComponent s = giant_component(none);
    CHECK(s.size == 1);
    CHECK(s.vertices == std::vector<VertexId>{0});
}

TEST_CASE("giant size equals the maximal cluster size") {
    const TorusSpec spec(2, 6);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Configuration cfg = sample_configuration(spec, 0.5, seed);
        const auto dec = cluster_decomposition(cfg);
        std::int64_t mx = 0;
        for (const auto& [id, sz] : dec.sizes) mx = std::max(mx, sz);
        CHECK(giant_component(cfg).size == mx);
    }
}

TEST_CASE("symmetric difference of giants under a flip") {
    const TorusSpec spec(2, 4);
    Configuration all(spec, true);
    for (EdgeId e : {EdgeId{0}, EdgeId{13}, EdgeId{31}})
        CHECK(symmetric_difference_size(all, e) == 0);

    // C = {(0,0),(1,0)}; opening (1,0)-(2,0) grows it by one vertex
    Configuration one(spec);
    one.set(spec.vertex_index({0, 0}) * 2 + 0, true);
    const EdgeId attach = spec.vertex_index({1, 0}) * 2 + 0;
    CHECK(symmetric_difference_size(one, attach) == 1);

    // joining the giant to a separate open cluster of size k gives delta = k
    Configuration chain(spec);
    chain.set(spec.vertex_index({0, 0}) * 2 + 0, true);  // pair {0,1}... sizes tie
    chain.set(spec.vertex_index({2, 0}) * 2 + 0, true);  // pair {(2,0),(3,0)}
    chain.set(spec.vertex_index({2, 1}) * 2 + 0, true);  // pair {(2,1),(3,1)}
    chain.set(spec.vertex_index({2, 0}) * 2 + 1, true);  // link -> cluster of 4
    // giant = the 4-cluster; attaching the {0,1} pair via (1,0)-(2,0):
    CHECK(symmetric_difference_size(chain, attach) == 2);
}

TEST_CASE("flip-symmetry of the symmetric difference") {
    const TorusSpec spec(2, 5);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Configuration cfg = sample_configuration(spec, 0.55, seed);
        for (EdgeId e = 0; e < spec.edge_count(); e += 7) {
            const Configuration flipped = cfg.flipped(e);
            CHECK(symmetric_difference_size(cfg, e) == symmetric_difference_size(flipped, e));
        }
    }
}
