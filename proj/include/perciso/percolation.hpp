#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "perciso/config.hpp"

namespace perciso {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::int64_t n) : parent_(n), size_(n, 1) {
        for (std::int64_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::int64_t find(std::int64_t a) noexcept {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::int64_t a, std::int64_t b) noexcept {
        a = find(a); b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    [[nodiscard]] std::int64_t size_of(std::int64_t root) const noexcept { return size_[root]; }

private:
    std::vector<std::int64_t> parent_;
    std::vector<std::int64_t> size_;
};

}  // namespace detail

/// Connected components of the open subgraph. Cluster ids are canonical:
/// the smallest vertex id in the cluster.
struct ClusterDecomposition {
    std::vector<VertexId> label;                       // per vertex: cluster id
    std::unordered_map<VertexId, std::int64_t> sizes;  // cluster id -> vertex count
};

[[nodiscard]] inline ClusterDecomposition cluster_decomposition(const Configuration& cfg) {
    const TorusSpec& spec = cfg.spec();
    const std::int64_t nv = spec.vertex_count();
    detail::UnionFind uf(nv);
    const int d = spec.d();
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        if (!cfg.open(e)) continue;
        const VertexId v = e / d;
        uf.unite(v, spec.neighbor(v, static_cast<int>(e % d), +1));
    }
    ClusterDecomposition out;
    out.label.assign(nv, -1);
    // First pass in vertex order assigns each root the smallest member id.
    std::vector<VertexId> canon(nv, -1);
    for (VertexId v = 0; v < nv; ++v) {
        const std::int64_t r = uf.find(v);
        if (canon[r] == -1) canon[r] = v;
        out.label[v] = canon[r];
    }
    for (VertexId v = 0; v < nv; ++v) {
        if (out.label[v] == v) out.sizes.emplace(v, uf.size_of(uf.find(v)));
    }
    return out;
}

/// The giant component C_d(n): maximal open cluster, ties broken by the
/// cluster containing the smallest vertex id.
struct GiantComponent {
    std::vector<VertexId> vertices;  // sorted
    std::int64_t size = 0;

    [[nodiscard]] bool contains(VertexId v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }
};

[[nodiscard]] inline GiantComponent giant_component(const ClusterDecomposition& dec) {
    VertexId best_id = -1;
    std::int64_t best_size = -1;
    // Scanning ids in increasing order makes "first strictly larger wins"
    // exactly the smallest-vertex tie-break.
    std::vector<VertexId> ids;
    ids.reserve(dec.sizes.size());
    for (const auto& [id, sz] : dec.sizes) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (VertexId id : ids) {
        const std::int64_t sz = dec.sizes.at(id);
        if (sz > best_size) { best_size = sz; best_id = id; }
    }
    GiantComponent g;
    g.size = best_size;
    g.vertices.reserve(static_cast<std::size_t>(best_size));
    for (VertexId v = 0; v < static_cast<VertexId>(dec.label.size()); ++v) {
        if (dec.label[v] == best_id) g.vertices.push_back(v);
    }
    return g;
}

[[nodiscard]] inline GiantComponent giant_component(const Configuration& cfg) {
    return giant_component(cluster_decomposition(cfg));
}

/// |C(omega) symmetric-difference C(omega^e)|.
[[nodiscard]] inline std::int64_t symmetric_difference_size(const Configuration& cfg, EdgeId e) {
    const GiantComponent a = giant_component(cfg);
    const GiantComponent b = giant_component(cfg.flipped(e));
    std::int64_t diff = 0;
    auto ia = a.vertices.begin(), ib = b.vertices.begin();
    while (ia != a.vertices.end() && ib != b.vertices.end()) {
        if (*ia < *ib) { ++diff; ++ia; }
        else if (*ib < *ia) { ++diff; ++ib; }
        else { ++ia; ++ib; }
    }
    diff += (a.vertices.end() - ia) + (b.vertices.end() - ib);
    return diff;
}

}  // namespace perciso
