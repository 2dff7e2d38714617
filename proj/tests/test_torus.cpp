#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "perciso/torus.hpp"

using namespace perciso;

TEST_CASE("vertex indexing is little-endian mixed-radix") {
    const TorusSpec t24(2, 4);
    CHECK(t24.vertex_index({0, 0}) == 0);
    CHECK(t24.vertex_index({1, 2}) == 9);
    const TorusSpec t33(3, 3);
    CHECK(t33.vertex_index({2, 1, 0}) == 5);

    CHECK_THROWS_AS(t24.vertex_index({4, 0}), std::out_of_range);
    CHECK_THROWS_AS(t24.vertex_index({0, -1}), std::out_of_range);
    CHECK_THROWS_AS(t24.vertex_index({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("coordinates round-trip through the index") {
    const TorusSpec spec(3, 5);
    for (VertexId v = 0; v < spec.vertex_count(); ++v)
        CHECK(spec.vertex_index(spec.vertex_coords(v)) == v);
}

TEST_CASE("edge endpoints follow the lower-endpoint encoding") {
    const TorusSpec spec(2, 4);
    auto e0 = spec.edge_endpoints(0);
    CHECK(e0.from == spec.vertex_index({0, 0}));
    CHECK(e0.to == spec.vertex_index({1, 0}));
    CHECK(e0.direction == 0);

    auto e19 = spec.edge_endpoints(19);
    CHECK(e19.from == spec.vertex_index({1, 2}));
    CHECK(e19.to == spec.vertex_index({1, 3}));
    CHECK(e19.direction == 1);

    auto e6 = spec.edge_endpoints(6);  // wraparound 3+1 = 0
    CHECK(e6.from == spec.vertex_index({3, 0}));
    CHECK(e6.to == spec.vertex_index({0, 0}));
    CHECK(e6.direction == 0);

    CHECK_THROWS_AS(spec.edge_endpoints(spec.edge_count()), std::out_of_range);
}

TEST_CASE("edge indexing round-trips from the lower endpoint") {
    const TorusSpec spec(3, 4);
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const auto ends = spec.edge_endpoints(e);
        CHECK(ends.from * spec.d() + ends.direction == e);
        CHECK(ends.from != ends.to);
    }
}

TEST_CASE("incident edges: 1-D cycle example and 2d-regularity") {
    const TorusSpec ring(1, 3);
    const auto inc = ring.incident_edges(0);
    CHECK(std::set<EdgeId>(inc.begin(), inc.end()) == std::set<EdgeId>{0, 2});

    const TorusSpec spec(2, 4);
    const VertexId origin = spec.vertex_index({0, 0});
    const auto inc2 = spec.incident_edges(origin);
    const std::set<EdgeId> expect{
        origin * 2 + 0, origin * 2 + 1,
        spec.vertex_index({3, 0}) * 2 + 0, spec.vertex_index({0, 3}) * 2 + 1};
    CHECK(std::set<EdgeId>(inc2.begin(), inc2.end()) == expect);

    // handshake: every vertex has 2d distinct incident edges, each edge seen twice
    std::int64_t total = 0;
    for (VertexId v = 0; v < spec.vertex_count(); ++v) {
        const auto edges = spec.incident_edges(v);
        CHECK(std::set<EdgeId>(edges.begin(), edges.end()).size() == 4);
        total += static_cast<std::int64_t>(edges.size());
    }
    CHECK(total == 2 * spec.edge_count());
}

TEST_CASE("translation invariance of the edge set") {
    const TorusSpec spec(2, 5);
    // translate by t: adjacency is preserved under v -> v + t (coordinatewise mod n)
    const std::vector<int> shift{2, 3};
    auto translate = [&](VertexId v) {
        auto c = spec.vertex_coords(v);
        for (int i = 0; i < spec.d(); ++i) c[i] = (c[i] + shift[i]) % spec.n();
        return spec.vertex_index(c);
    };
    std::set<std::pair<VertexId, VertexId>> base, shifted;
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const auto ends = spec.edge_endpoints(e);
        const auto norm = [](VertexId a, VertexId b) {
            return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        };
        base.insert(norm(ends.from, ends.to));
        shifted.insert(norm(translate(ends.from), translate(ends.to)));
    }
    CHECK(base == shifted);
}

TEST_CASE("degenerate side lengths are rejected") {
    CHECK_THROWS_AS(TorusSpec(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(TorusSpec(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(TorusSpec(0, 4), std::invalid_argument);
}
