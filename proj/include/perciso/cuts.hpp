#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "perciso/cluster_graph.hpp"
#include "perciso/rational.hpp"

namespace perciso {

enum class SolveMode { brute, exact, heuristic };

[[nodiscard]] inline const char* to_string(SolveMode m) noexcept {
    switch (m) {
        case SolveMode::brute: return "brute";
        case SolveMode::exact: return "exact";
        case SolveMode::heuristic: return "heuristic";
    }
    return "?";
}

inline SolveMode solve_mode_from_string(const std::string& s) {
    if (s == "brute") return SolveMode::brute;
    if (s == "exact") return SolveMode::exact;
    if (s == "heuristic") return SolveMode::heuristic;
    throw std::invalid_argument("unknown solve mode: " + s);
}

/// A candidate set A ⊆ C with its open boundary count and ratio psi_A.
struct CutSet {
    std::vector<VertexId> vertices;  // sorted
    std::int64_t boundary = 0;
    ExactRatio ratio;

    [[nodiscard]] std::int64_t size() const noexcept {
        return static_cast<std::int64_t>(vertices.size());
    }
};

struct CheegerResult {
    ExactRatio phi;
    CutSet witness;                     // lex-smallest among maximum-size minimizers
    std::int64_t max_minimizer_size = 0;
    SolveMode method = SolveMode::exact;
    bool optimal = false;
};

struct IsoProfileResult {
    double epsilon = 0.0;
    double value = 0.0;
    std::vector<VertexId> witness;
};

/// |∂_C A|: open edges with exactly one endpoint in A, requiring A ⊆ C.
[[nodiscard]] inline std::int64_t boundary_size(const std::vector<VertexId>& a,
                                                const Configuration& cfg,
                                                const GiantComponent& giant) {
    for (const VertexId v : a) {
        if (!giant.contains(v))
            throw std::invalid_argument("boundary_size: set is not contained in the giant component");
    }
    return open_boundary_size(a, cfg);
}

/// psi_A = |∂_C A| / |A|, exact.
[[nodiscard]] inline ExactRatio psi(const std::vector<VertexId>& a, const Configuration& cfg,
                                    const GiantComponent& giant) {
    if (a.empty()) throw std::invalid_argument("psi: empty set");
    return ExactRatio(boundary_size(a, cfg, giant), static_cast<std::int64_t>(a.size()));
}

namespace detail {

inline constexpr int kBruteLimit = 24;

/// Gray-code walk over all nonempty subsets of the cluster, maintaining
/// size and open-boundary count incrementally. visit(mask, size, boundary).
template <typename Visit>
void for_each_subset_gray(const ClusterGraph& g, Visit&& visit) {
    const int m = g.m;
    std::vector<std::uint32_t> amask(m, 0);
    for (int v = 0; v < m; ++v)
        for (const int w : g.adj[v]) amask[v] |= (1u << w);
    std::uint32_t cur = 0;
    int size = 0;
    std::int64_t boundary = 0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int t = __builtin_ctzll(i);
        const std::uint32_t bit = 1u << t;
        const std::uint32_t without = cur & ~bit;
        const int inside = __builtin_popcount(amask[t] & without);
        if (cur & bit) {
            cur = without;
            --size;
            boundary -= g.deg[t] - 2 * inside;
        } else {
            cur |= bit;
            ++size;
            boundary += g.deg[t] - 2 * inside;
        }
        visit(cur, size, boundary);
    }
}

/// With equal popcount, the sorted vertex sequence of x is lexicographically
/// smaller than y's iff the lowest differing bit belongs to x.
[[nodiscard]] inline bool lex_smaller_mask(std::uint32_t x, std::uint32_t y) noexcept {
    const std::uint32_t d = x ^ y;
    if (d == 0) return false;
    return (d & -d) & x;
}

[[nodiscard]] inline std::vector<VertexId> mask_to_vertices(const ClusterGraph& g,
                                                            std::uint32_t mask) {
    std::vector<VertexId> out;
    for (int v = 0; v < g.m; ++v)
        if (mask & (1u << v)) out.push_back(g.verts[v]);
    return out;
}

inline void check_cluster_solvable(const ClusterGraph& g) {
    if (g.m < 2)
        throw phi_undefined_error("phi undefined: giant component has size " +
                                  std::to_string(g.m));
}

}  // namespace detail

/// Exhaustive minimum of psi_A over nonempty A ⊆ C with 2|A| ≤ |C|.
/// Enumerates all 2^|C| subsets; guarded at |C| ≤ 24.
[[nodiscard]] inline CheegerResult cheeger_brute(const ClusterGraph& g) {
    detail::check_cluster_solvable(g);
    if (g.m > detail::kBruteLimit)
        throw guard_error("cheeger_brute: cluster exceeds enumeration guard of " +
                              std::to_string(detail::kBruteLimit),
                          g.m);
    const int s_max = g.m / 2;
    std::int64_t best_num = -1, best_den = 1;  // -1 marks unset
    std::int64_t best_size = 0;
    std::uint32_t best_mask = 0;
    detail::for_each_subset_gray(g, [&](std::uint32_t mask, int size, std::int64_t b) {
        if (size < 1 || size > s_max) return;
        if (best_num < 0) {
            best_num = b; best_den = size; best_size = size; best_mask = mask;
            return;
        }
        const __int128 lhs = static_cast<__int128>(b) * best_den;
        const __int128 rhs = static_cast<__int128>(best_num) * size;
        if (lhs < rhs) {
            best_num = b; best_den = size; best_size = size; best_mask = mask;
        } else if (lhs == rhs) {
            if (size > best_size ||
                (size == best_size && detail::lex_smaller_mask(mask, best_mask))) {
                best_num = b; best_den = size; best_size = size; best_mask = mask;
            }
        }
    });
    CheegerResult res;
    // Updates always store the winning set's own (boundary, size) pair.
    res.phi = ExactRatio(best_num, best_den);
    res.witness.vertices = detail::mask_to_vertices(g, best_mask);
    res.witness.boundary = best_num;
    res.witness.ratio = res.phi;
    res.max_minimizer_size = best_size;
    res.method = SolveMode::brute;
    res.optimal = true;
    return res;
}

[[nodiscard]] inline CheegerResult cheeger_brute(const Configuration& cfg,
                                                 const GiantComponent& giant) {
    return cheeger_brute(build_cluster_graph(cfg, giant));
}

/// epsilon(n) = d + 2d * (log log n / log n), natural logarithms.
[[nodiscard]] inline double epsilon_n(const TorusSpec& spec) {
    // n >= 3 guaranteed by TorusSpec, so log log n > 0.
    const double ln = std::log(static_cast<double>(spec.n()));
    return spec.d() + 2.0 * spec.d() * (std::log(ln) / ln);
}

/// Brute-force isoperimetric profile I_eps: min |∂A| / |A|^((eps-1)/eps).
[[nodiscard]] inline IsoProfileResult iso_profile_brute(const ClusterGraph& g, double eps) {
    if (!(eps > 1.0)) throw std::invalid_argument("iso_profile: epsilon must be > 1");
    detail::check_cluster_solvable(g);
    if (g.m > detail::kBruteLimit)
        throw guard_error("iso_profile (brute): cluster exceeds enumeration guard of " +
                              std::to_string(detail::kBruteLimit),
                          g.m);
    const int s_max = g.m / 2;
    const double gamma = (eps - 1.0) / eps;
    std::vector<double> size_pow(static_cast<std::size_t>(s_max) + 1, 1.0);
    for (int t = 1; t <= s_max; ++t)
        size_pow[static_cast<std::size_t>(t)] = std::pow(static_cast<double>(t), gamma);
    double best = -1.0;
    int best_size = 0;
    std::uint32_t best_mask = 0;
    detail::for_each_subset_gray(g, [&](std::uint32_t mask, int size, std::int64_t b) {
        if (size < 1 || size > s_max) return;
        const double val = static_cast<double>(b) / size_pow[static_cast<std::size_t>(size)];
        if (best < 0.0 || val < best) {
            best = val; best_size = size; best_mask = mask;
        } else if (val == best && (size < best_size ||
                                   (size == best_size &&
                                    detail::lex_smaller_mask(mask, best_mask)))) {
            best_size = size; best_mask = mask;
        }
    });
    IsoProfileResult res;
    res.epsilon = eps;
    res.value = best;
    res.witness = detail::mask_to_vertices(g, best_mask);
    return res;
}

}  // namespace perciso
