#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "perciso/percolation.hpp"

namespace perciso {

/// Local view of the giant component: sorted global vertex ids, adjacency
/// over open edges (local indices), open degree. An open edge incident to a
/// member of C cannot leave C, so the induced open subgraph is all of C's
/// open edges.
///
/// For d=2 the axis lines (rows/columns, each an n-cycle of same-direction
/// edges) are recorded together with an all-open flag per line; the exact
/// solver uses them for admissible lower bounds on boundary sizes.
struct ClusterGraph {
    const TorusSpec* spec = nullptr;
    std::vector<VertexId> verts;        // sorted
    std::vector<std::vector<int>> adj;  // local ids
    std::vector<int> deg;
    int m = 0;

    // d=2 line structure
    bool has_lines = false;
    int n_side = 0;
    std::vector<int> line_of[2];   // per local vertex: row index (k=0), column index (k=1)
    std::vector<char> line_open[2];

    [[nodiscard]] int local_of(VertexId v) const {
        const auto it = std::lower_bound(verts.begin(), verts.end(), v);
        if (it == verts.end() || *it != v) return -1;
        return static_cast<int>(it - verts.begin());
    }
};

[[nodiscard]] inline ClusterGraph build_cluster_graph(const Configuration& cfg,
                                                      const GiantComponent& giant) {
    ClusterGraph g;
    g.spec = &cfg.spec();
    g.verts = giant.vertices;
    g.m = static_cast<int>(g.verts.size());
    g.adj.assign(g.m, {});
    g.deg.assign(g.m, 0);
    const TorusSpec& spec = cfg.spec();
    const int d = spec.d();
    for (int lv = 0; lv < g.m; ++lv) {
        const VertexId v = g.verts[lv];
        for (int k = 0; k < d; ++k) {
            const EdgeId e = v * d + k;
            if (!cfg.open(e)) continue;
            const int lw = g.local_of(spec.neighbor(v, k, +1));
            // open edge from C stays in C
            g.adj[lv].push_back(lw);
            g.adj[lw].push_back(lv);
        }
    }
    for (int lv = 0; lv < g.m; ++lv) {
        std::sort(g.adj[lv].begin(), g.adj[lv].end());
        g.deg[lv] = static_cast<int>(g.adj[lv].size());
    }

    if (d == 2) {
        g.has_lines = true;
        const int n = spec.n();
        g.n_side = n;
        for (int k = 0; k < 2; ++k) {
            g.line_of[k].resize(g.m);
            g.line_open[k].assign(n, 1);
        }
        for (int lv = 0; lv < g.m; ++lv) {
            const VertexId v = g.verts[lv];
            const int x = static_cast<int>(v % n);
            const int y = static_cast<int>(v / n);
            g.line_of[0][lv] = y;  // row: direction-0 edges vary x
            g.line_of[1][lv] = x;  // column: direction-1 edges vary y
        }
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const VertexId v = x + static_cast<VertexId>(y) * n;
                if (!cfg.open(v * 2 + 0)) g.line_open[0][y] = 0;
                if (!cfg.open(v * 2 + 1)) g.line_open[1][x] = 0;
            }
    }
    return g;
}

/// Count of open edges with exactly one endpoint in A (A sorted, global ids).
/// No membership requirement on A: this is the raw |∂A| used by psi and by
/// the flip lemmas, where A stays fixed while the configuration changes.
[[nodiscard]] inline std::int64_t open_boundary_size(const std::vector<VertexId>& a,
                                                     const Configuration& cfg) {
    const TorusSpec& spec = cfg.spec();
    const int d = spec.d();
    const auto in_a = [&](VertexId v) {
        return std::binary_search(a.begin(), a.end(), v);
    };
    std::int64_t count = 0;
    for (const VertexId v : a) {
        for (int k = 0; k < d; ++k) {
            if (cfg.open(v * d + k) && !in_a(spec.neighbor(v, k, +1))) ++count;
            const VertexId w = spec.neighbor(v, k, -1);
            if (cfg.open(w * d + k) && !in_a(w)) ++count;
        }
    }
    return count;
}

}  // namespace perciso
