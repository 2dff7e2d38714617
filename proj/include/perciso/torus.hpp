#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perciso/errors.hpp"

namespace perciso {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;

/// Geometry of the d-dimensional torus Z^d/nZ^d.
///
/// Vertices are indexed little-endian mixed-radix:
///   index = x_0 + x_1*n + ... + x_{d-1}*n^{d-1}.
/// Edges are indexed from their lower endpoint:
///   edge (v, v + unit_k mod n) has id v*d + k, k in [0, d).
/// This is the single canonical order used by the file format and the
/// per-edge RNG stream. n >= 3 keeps the torus a simple graph (n=1 has
/// self-loops, n=2 parallel edges), so the edge encoding is a bijection.
class TorusSpec {
public:
    TorusSpec(int d, int n) : d_(d), n_(n) {
        if (d < 1) throw std::invalid_argument("torus: dimension must be >= 1");
        if (n < 3) throw std::invalid_argument("torus: side length must be >= 3");
        vertex_count_ = 1;
        for (int i = 0; i < d; ++i) {
            if (vertex_count_ > (int64_t{1} << 40) / n)
                throw guard_error("torus: n^d exceeds supported size", n);
            vertex_count_ *= n;
        }
        edge_count_ = vertex_count_ * d;
    }

    [[nodiscard]] int d() const noexcept { return d_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::int64_t vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] std::int64_t edge_count() const noexcept { return edge_count_; }

    [[nodiscard]] VertexId vertex_index(const std::vector<int>& coords) const {
        if (static_cast<int>(coords.size()) != d_)
            throw std::invalid_argument("vertex_index: coordinate count != d");
        std::int64_t idx = 0, stride = 1;
        for (int i = 0; i < d_; ++i) {
            if (coords[i] < 0 || coords[i] >= n_)
                throw std::out_of_range("vertex_index: coordinate out of range");
            idx += coords[i] * stride;
            stride *= n_;
        }
        return idx;
    }

    [[nodiscard]] std::vector<int> vertex_coords(VertexId v) const {
        check_vertex(v);
        std::vector<int> coords(d_);
        for (int i = 0; i < d_; ++i) {
            coords[i] = static_cast<int>(v % n_);
            v /= n_;
        }
        return coords;
    }

    /// Endpoints of edge e: (v, v + unit_k mod n, k) with v = e div d, k = e mod d.
    struct EdgeEnds {
        VertexId from;
        VertexId to;
        int direction;
    };

    [[nodiscard]] EdgeEnds edge_endpoints(EdgeId e) const {
        check_edge(e);
        const VertexId v = e / d_;
        const int k = static_cast<int>(e % d_);
        return {v, neighbor(v, k, +1), k};
    }

    /// Neighbor of v one step along axis k (step = +1 or -1), wrapping mod n.
    [[nodiscard]] VertexId neighbor(VertexId v, int k, int step) const {
        std::int64_t stride = 1;
        for (int i = 0; i < k; ++i) stride *= n_;
        const int xk = static_cast<int>((v / stride) % n_);
        int xk2 = xk + step;
        if (xk2 < 0) xk2 += n_;
        if (xk2 >= n_) xk2 -= n_;
        return v + static_cast<std::int64_t>(xk2 - xk) * stride;
    }

    /// The 2d edges incident to v: d outgoing (v*d+k) and d incoming
    /// ((v-unit_k)*d+k). Distinct because n >= 3.
    [[nodiscard]] std::vector<EdgeId> incident_edges(VertexId v) const {
        check_vertex(v);
        std::vector<EdgeId> out;
        out.reserve(2 * d_);
        for (int k = 0; k < d_; ++k) out.push_back(v * d_ + k);
        for (int k = 0; k < d_; ++k) out.push_back(neighbor(v, k, -1) * d_ + k);
        return out;
    }

    [[nodiscard]] bool operator==(const TorusSpec& o) const noexcept {
        return d_ == o.d_ && n_ == o.n_;
    }

private:
    void check_vertex(VertexId v) const {
        if (v < 0 || v >= vertex_count_)
            throw std::out_of_range("vertex id out of range");
    }
    void check_edge(EdgeId e) const {
        if (e < 0 || e >= edge_count_)
            throw std::out_of_range("edge id out of range");
    }

    int d_;
    int n_;
    std::int64_t vertex_count_;
    std::int64_t edge_count_;
};

}  // namespace perciso
