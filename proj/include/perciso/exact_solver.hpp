#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "perciso/cuts.hpp"
#include "perciso/heuristic.hpp"

namespace perciso {

struct ExactOptions {
    std::int64_t node_budget = 400'000'000;   // B&B nodes per solve
    std::size_t minimizer_cap = 200'000;      // collected ratio-optimal connected sets
    std::int64_t pack_budget = 20'000'000;    // packing DFS nodes
    HeuristicParams warm_start;               // incumbent seeding
};

namespace detail {

/// Branch-and-bound over connected induced subsets of the cluster, each
/// visited exactly once (anchored at its minimum vertex; binary
/// include/exclude branching on frontier vertices). Sound for ratio
/// objectives because some induced component of any minimizer is a no-worse
/// connected minimizer (mediant inequality). The pruning bound is admissible:
/// it never exceeds the objective of any descendant set.
template <typename Objective>
class ConnectedCutSearch {
public:
    ConnectedCutSearch(const ClusterGraph& g, Objective& obj, const ExactOptions& opt)
        : g_(g), obj_(obj), opt_(opt) {}

    void run() {
        const int m = g_.m;
        s_max_ = m / 2;
        if (s_max_ < 1) return;
        in_set_.assign(m, 0);
        excluded_.assign(m, 0);
        cnt_in_.assign(m, 0);
        stack_.clear();
        if (g_.has_lines) {
            line_cnt_[0].assign(g_.n_side, 0);
            line_cnt_[1].assign(g_.n_side, 0);
            line_def_[0].reserve(g_.n_side);
            line_def_[1].reserve(g_.n_side);
        }
        pool_asc_prefix_.assign(m + 1, 0);
        for (int root = 0; root < m; ++root) {
            prepare_pool(root);
            for (int v = 0; v < root; ++v) excluded_[v] = 1;
            include(root);
            dfs(true);
            undo_include(root);
            for (int v = 0; v < root; ++v) excluded_[v] = 0;
        }
    }

    [[nodiscard]] std::int64_t nodes() const noexcept { return nodes_; }

private:
    void prepare_pool(int root) {
        pool_degs_.clear();
        for (int v = root; v < g_.m; ++v) pool_degs_.push_back(g_.deg[v]);
        std::sort(pool_degs_.begin(), pool_degs_.end());
        pool_sz_ = static_cast<int>(pool_degs_.size());
        for (int i = 0; i < pool_sz_; ++i)
            pool_asc_prefix_[i + 1] = pool_asc_prefix_[i] + pool_degs_[i];
    }

    void include(int u) {
        in_set_[u] = 1;
        stack_.push_back(u);
        ++k_;
        b_ += g_.deg[u] - 2 * cnt_in_[u];
        vol_ += g_.deg[u];
        for (const int w : g_.adj[u]) {
            ++cnt_in_[w];
            if (excluded_[w]) ++b_fixed_;
        }
        if (g_.has_lines) {
            ++line_cnt_[0][g_.line_of[0][u]];
            ++line_cnt_[1][g_.line_of[1][u]];
        }
    }

    void undo_include(int u) {
        if (g_.has_lines) {
            --line_cnt_[0][g_.line_of[0][u]];
            --line_cnt_[1][g_.line_of[1][u]];
        }
        for (const int w : g_.adj[u]) {
            --cnt_in_[w];
            if (excluded_[w]) --b_fixed_;
        }
        vol_ -= g_.deg[u];
        b_ -= g_.deg[u] - 2 * cnt_in_[u];
        --k_;
        stack_.pop_back();
        in_set_[u] = 0;
    }

    // LIFO discipline keeps cnt_in_[u] identical at exclude and its undo.
    void exclude(int u) {
        excluded_[u] = 1;
        b_fixed_ += cnt_in_[u];
    }
    void undo_exclude(int u) {
        b_fixed_ -= cnt_in_[u];
        excluded_[u] = 0;
    }

    /// Smallest integer c with c >= 2*sqrt(t).
    [[nodiscard]] static int ceil_two_sqrt(int t) noexcept {
        int c = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(t))));
        while (c >= 1 && static_cast<std::int64_t>(c - 1) * (c - 1) >= 4LL * t) --c;
        while (static_cast<std::int64_t>(c) * c < 4LL * t) ++c;
        return c;
    }

    /// True iff no descendant (current set plus 1..avail more vertices) can
    /// match the incumbent. Bounds per added count r:
    ///   lb1: boundary identity b(T) = b + vol(T\S) - 2 e(T\S) - 2 e(S, T\S),
    ///        with vol from the r smallest pool degrees, e(T\S) <= min(d r, C(r,2)),
    ///        e(S,T\S) <= min(live boundary, r * max frontier multiplicity).
    ///   lb_dense (d=2): vol(T) - 2 e(T), internal edges capped by the torus
    ///        line structure: e(T) <= 2t - min(ceil(2 sqrt t), n).
    ///   lb_line (d=2): every all-open axis line occupied but not filled
    ///        contributes 2 boundary edges; r additions can fill only lines
    ///        whose combined deficits fit in r, greedily smallest-first.
    [[nodiscard]] bool prunable(int c_max) {
        const int avail = std::min(s_max_ - k_, pool_sz_ - k_);
        if (avail <= 0) return true;
        const std::int64_t live = b_ - b_fixed_;

        int n_lines[2] = {0, 0};
        if (g_.has_lines) {
            for (int kd = 0; kd < 2; ++kd) {
                line_def_[kd].clear();
                for (int l = 0; l < g_.n_side; ++l) {
                    if (!g_.line_open[kd][l]) continue;
                    const int c = line_cnt_[kd][l];
                    if (c > 0 && c < g_.n_side) line_def_[kd].push_back(g_.n_side - c);
                }
                std::sort(line_def_[kd].begin(), line_def_[kd].end());
                n_lines[kd] = static_cast<int>(line_def_[kd].size());
            }
        }
        // moving greedy pointers: q[kd] lines completable within r additions
        int q[2] = {0, 0};
        std::int64_t def_acc[2] = {0, 0};

        for (int r = 1; r <= avail; ++r) {
            const int t = k_ + r;
            const std::int64_t add_deg = pool_asc_prefix_[r];
            const std::int64_t emax =
                std::min<std::int64_t>(static_cast<std::int64_t>(g_.spec->d()) * r,
                                       static_cast<std::int64_t>(r) * (r - 1) / 2);
            const std::int64_t swallow =
                std::min(live, static_cast<std::int64_t>(r) * c_max);
            std::int64_t lb = b_ + add_deg - 2 * emax - 2 * swallow;
            if (lb < b_fixed_) lb = b_fixed_;
            if (lb < 1) lb = 1;
            if (g_.has_lines) {
                const std::int64_t estruct =
                    2LL * t - std::min(ceil_two_sqrt(t), g_.n_side);
                const std::int64_t dense = vol_ + add_deg - 2 * estruct;
                if (dense > lb) lb = dense;
                std::int64_t line_lb = 0;
                for (int kd = 0; kd < 2; ++kd) {
                    while (q[kd] < n_lines[kd] &&
                           def_acc[kd] + line_def_[kd][q[kd]] <= r) {
                        def_acc[kd] += line_def_[kd][q[kd]];
                        ++q[kd];
                    }
                    line_lb += 2LL * (n_lines[kd] - q[kd]);
                }
                if (line_lb > lb) lb = line_lb;
            }
            if (!obj_.prunes(lb, t)) return false;
        }
        return true;
    }

    void dfs(bool fresh) {
        ++nodes_;
        if (nodes_ > opt_.node_budget)
            throw guard_error("connected cut search: node budget exceeded", nodes_);
        if (fresh && k_ >= 1 && k_ <= s_max_) obj_.offer(b_, k_, stack_);
        if (k_ == s_max_) return;

        int u = -1, c_max = 0;
        for (int v = 0; v < g_.m; ++v) {
            if (in_set_[v] || excluded_[v] || cnt_in_[v] == 0) continue;
            if (cnt_in_[v] > c_max) { c_max = cnt_in_[v]; u = v; }
        }
        if (u < 0) return;
        if (prunable(c_max)) return;

        include(u);
        dfs(true);
        undo_include(u);
        exclude(u);
        dfs(false);
        undo_exclude(u);
    }

    const ClusterGraph& g_;
    Objective& obj_;
    const ExactOptions& opt_;

    int s_max_ = 0;
    int k_ = 0;
    std::int64_t b_ = 0, b_fixed_ = 0, vol_ = 0;
    std::int64_t nodes_ = 0;
    std::vector<char> in_set_, excluded_;
    std::vector<int> cnt_in_;
    std::vector<int> stack_;

    int pool_sz_ = 0;
    std::vector<int> pool_degs_;
    std::vector<std::int64_t> pool_asc_prefix_;

    std::vector<int> line_cnt_[2];
    std::vector<int> line_def_[2];
};

struct CheegerObjective {
    std::int64_t num = std::numeric_limits<std::int64_t>::max() / 4;
    std::int64_t den = 1;
    bool collect = false;
    std::size_t cap = 0;
    std::vector<std::vector<int>> minimizers;  // sorted local ids
    std::vector<int> witness;                  // largest achiever seen
    std::int64_t witness_b = -1;

    void offer(std::int64_t b, int k, const std::vector<int>& stack) {
        const __int128 lhs = static_cast<__int128>(b) * den;
        const __int128 rhs = static_cast<__int128>(num) * k;
        if (lhs < rhs) {
            num = b;
            den = k;
            minimizers.clear();
            store(b, k, stack, true);
        } else if (lhs == rhs) {
            store(b, k, stack, k > static_cast<int>(witness.size()));
        }
    }

    [[nodiscard]] bool prunes(std::int64_t lb, int t) const noexcept {
        return static_cast<__int128>(lb) * den > static_cast<__int128>(num) * t;
    }

private:
    void store(std::int64_t b, int k, const std::vector<int>& stack, bool as_witness) {
        std::vector<int> sorted(stack.begin(), stack.end());
        std::sort(sorted.begin(), sorted.end());
        if (as_witness) {
            witness = sorted;
            witness_b = b;
        }
        if (collect) {
            if (minimizers.size() >= cap)
                throw guard_error("cheeger_exact: minimizer collection cap exceeded",
                                  static_cast<std::int64_t>(minimizers.size()));
            minimizers.push_back(std::move(sorted));
        }
        (void)k;
    }
};

struct IsoObjective {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> tpow;  // t^gamma
    std::vector<int> witness;
    std::int64_t witness_b = -1;

    void offer(std::int64_t b, int k, const std::vector<int>& stack) {
        const double val = static_cast<double>(b) / tpow[static_cast<std::size_t>(k)];
        bool take = val < best;
        if (!take && val == best) {
            if (k < static_cast<int>(witness.size())) {
                take = true;
            } else if (k == static_cast<int>(witness.size())) {
                std::vector<int> sorted(stack.begin(), stack.end());
                std::sort(sorted.begin(), sorted.end());
                take = sorted < witness;
                if (take) {
                    best = val;
                    witness = std::move(sorted);
                    witness_b = b;
                }
                return;
            }
        }
        if (take) {
            best = val;
            witness.assign(stack.begin(), stack.end());
            std::sort(witness.begin(), witness.end());
            witness_b = b;
        }
    }

    [[nodiscard]] bool prunes(std::int64_t lb, int t) const noexcept {
        const double lower = static_cast<double>(lb) / tpow[static_cast<std::size_t>(t)];
        return lower > best * (1.0 + 1e-12);
    }
};

/// Boundary of a vertex set inside the cluster graph (all edges open).
[[nodiscard]] inline std::int64_t cluster_boundary(const ClusterGraph& g,
                                                   const std::vector<char>& in_set) {
    std::int64_t b = 0;
    for (int v = 0; v < g.m; ++v) {
        if (!in_set[v]) continue;
        for (const int w : g.adj[v])
            if (!in_set[w]) ++b;
    }
    return b;
}

struct PackResult {
    std::int64_t total = 0;
    std::vector<int> union_verts;  // sorted local ids
};

/// Maximum-cardinality minimizer: every minimizer decomposes into pairwise
/// disjoint, pairwise non-adjacent connected minimizers, and every such
/// family with total size <= s_max is a minimizer (components of a minimizer
/// all attain the optimal ratio exactly; a crossing open edge would beat the
/// optimum). So the largest minimizer is the best packing of the collected
/// connected minimizers.
[[nodiscard]] inline PackResult pack_minimizers(const ClusterGraph& g,
                                                const std::vector<std::vector<int>>& sets,
                                                std::int64_t s_max,
                                                std::int64_t budget) {
    const int n_sets = static_cast<int>(sets.size());
    std::vector<int> order(n_sets);
    for (int i = 0; i < n_sets; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (sets[a].size() != sets[b].size()) return sets[a].size() > sets[b].size();
        return sets[a] < sets[b];
    });
    std::vector<std::int64_t> suffix(n_sets + 1, 0);
    for (int i = n_sets - 1; i >= 0; --i)
        suffix[i] = suffix[i + 1] + static_cast<std::int64_t>(sets[order[i]].size());

    std::vector<int> blocked(g.m, 0);
    std::vector<int> chosen;
    PackResult best;
    std::int64_t nodes = 0;

    auto build_union = [&]() {
        std::vector<int> u;
        for (const int idx : chosen)
            u.insert(u.end(), sets[idx].begin(), sets[idx].end());
        std::sort(u.begin(), u.end());
        return u;
    };

    auto consider = [&](std::int64_t total) {
        if (total > best.total) {
            best.total = total;
            best.union_verts = build_union();
        } else if (total == best.total && total > 0) {
            std::vector<int> u = build_union();
            if (u < best.union_verts) best.union_verts = std::move(u);
        }
    };

    std::function<void(int, std::int64_t)> dfs = [&](int pos, std::int64_t total) {
        if (++nodes > budget)
            throw guard_error("cheeger_exact: minimizer packing budget exceeded", nodes);
        if (pos == n_sets) return;
        if (total + suffix[pos] < best.total) return;
        const int idx = order[pos];
        const auto& s = sets[idx];
        const std::int64_t tsz = total + static_cast<std::int64_t>(s.size());
        if (tsz <= s_max) {
            bool ok = true;
            for (const int v : s)
                if (blocked[v]) { ok = false; break; }
            if (ok) {
                for (const int v : s) {
                    ++blocked[v];
                    for (const int w : g.adj[v]) ++blocked[w];
                }
                chosen.push_back(idx);
                consider(tsz);
                dfs(pos + 1, tsz);
                chosen.pop_back();
                for (const int v : s) {
                    --blocked[v];
                    for (const int w : g.adj[v]) --blocked[w];
                }
            }
        }
        dfs(pos + 1, total);
    };
    dfs(0, 0);
    return best;
}

}  // namespace detail

/// Exact Cheeger value only (with a deterministic optimal witness): skips
/// minimizer collection and the maximum-cardinality pass.
[[nodiscard]] inline CheegerResult cheeger_exact_phi(const ClusterGraph& g,
                                                     const ExactOptions& opt = {}) {
    detail::check_cluster_solvable(g);
    const CheegerResult warm = cheeger_heuristic(g, opt.warm_start);
    detail::CheegerObjective obj;
    obj.num = warm.phi.num;
    obj.den = warm.phi.den;
    obj.collect = false;
    detail::ConnectedCutSearch search(g, obj, opt);
    search.run();

    CheegerResult res;
    res.method = SolveMode::exact;
    res.optimal = true;
    res.phi = ExactRatio::reduced(obj.num, obj.den);
    if (obj.witness.empty()) {
        // heuristic incumbent was never tied by a connected set: impossible,
        // since some induced component of its set attains a ratio <= phi
        throw std::logic_error("cheeger_exact: no optimal connected set found");
    }
    res.witness.vertices.reserve(obj.witness.size());
    std::vector<char> in_set(g.m, 0);
    for (const int v : obj.witness) in_set[v] = 1;
    for (const int v : obj.witness) res.witness.vertices.push_back(g.verts[v]);
    res.witness.boundary = detail::cluster_boundary(g, in_set);
    res.witness.ratio = ExactRatio(res.witness.boundary, res.witness.size());
    res.max_minimizer_size = res.witness.size();
    return res;
}

/// Exact Cheeger solve: optimal phi, the maximum cardinality over all
/// minimizers (disconnected ones included), and the lexicographically
/// smallest witness of that size.
[[nodiscard]] inline CheegerResult cheeger_exact(const ClusterGraph& g,
                                                 const ExactOptions& opt = {}) {
    detail::check_cluster_solvable(g);
    const CheegerResult warm = cheeger_heuristic(g, opt.warm_start);
    detail::CheegerObjective obj;
    obj.num = warm.phi.num;
    obj.den = warm.phi.den;
    obj.collect = true;
    obj.cap = opt.minimizer_cap;
    detail::ConnectedCutSearch search(g, obj, opt);
    search.run();
    if (obj.minimizers.empty())
        throw std::logic_error("cheeger_exact: no optimal connected set found");

    const detail::PackResult packed =
        detail::pack_minimizers(g, obj.minimizers, g.m / 2, opt.pack_budget);

    CheegerResult res;
    res.method = SolveMode::exact;
    res.optimal = true;
    res.phi = ExactRatio::reduced(obj.num, obj.den);
    std::vector<char> in_set(g.m, 0);
    for (const int v : packed.union_verts) in_set[v] = 1;
    res.witness.vertices.reserve(packed.union_verts.size());
    for (const int v : packed.union_verts) res.witness.vertices.push_back(g.verts[v]);
    res.witness.boundary = detail::cluster_boundary(g, in_set);
    res.witness.ratio = ExactRatio(res.witness.boundary, res.witness.size());
    res.max_minimizer_size = packed.total;
    return res;
}

[[nodiscard]] inline CheegerResult cheeger_exact(const Configuration& cfg,
                                                 const GiantComponent& giant,
                                                 const ExactOptions& opt = {}) {
    return cheeger_exact(build_cluster_graph(cfg, giant), opt);
}

/// Exact isoperimetric profile via the same connected search; sound because
/// (s1+s2)^gamma <= s1^gamma + s2^gamma for gamma <= 1, so some component of
/// any minimizer does at least as well.
[[nodiscard]] inline IsoProfileResult iso_profile_exact(const ClusterGraph& g, double eps,
                                                        const ExactOptions& opt = {}) {
    if (!(eps > 1.0)) throw std::invalid_argument("iso_profile: epsilon must be > 1");
    detail::check_cluster_solvable(g);
    const double gamma = (eps - 1.0) / eps;
    detail::IsoObjective obj;
    const int s_max = g.m / 2;
    obj.tpow.resize(static_cast<std::size_t>(s_max) + 1, 1.0);
    for (int t = 1; t <= s_max; ++t)
        obj.tpow[static_cast<std::size_t>(t)] = std::pow(static_cast<double>(t), gamma);
    detail::ConnectedCutSearch search(g, obj, opt);
    search.run();

    IsoProfileResult res;
    res.epsilon = eps;
    res.value = obj.best;
    res.witness.reserve(obj.witness.size());
    for (const int v : obj.witness) res.witness.push_back(g.verts[v]);
    return res;
}

/// Mode dispatchers used by the events module and the CLI.
[[nodiscard]] inline CheegerResult solve_cheeger(const ClusterGraph& g, SolveMode mode,
                                                 const ExactOptions& opt = {}) {
    switch (mode) {
        case SolveMode::brute: return cheeger_brute(g);
        case SolveMode::exact: return cheeger_exact(g, opt);
        case SolveMode::heuristic: return cheeger_heuristic(g, opt.warm_start);
    }
    throw std::logic_error("solve_cheeger: bad mode");
}

[[nodiscard]] inline CheegerResult solve_cheeger(const Configuration& cfg,
                                                 const GiantComponent& giant, SolveMode mode,
                                                 const ExactOptions& opt = {}) {
    return solve_cheeger(build_cluster_graph(cfg, giant), mode, opt);
}

[[nodiscard]] inline IsoProfileResult iso_profile(const ClusterGraph& g, double eps,
                                                  SolveMode mode = SolveMode::exact,
                                                  const ExactOptions& opt = {}) {
    if (mode == SolveMode::brute) return iso_profile_brute(g, eps);
    return iso_profile_exact(g, eps, opt);
}

[[nodiscard]] inline IsoProfileResult iso_profile(const Configuration& cfg,
                                                  const GiantComponent& giant, double eps,
                                                  SolveMode mode = SolveMode::exact,
                                                  const ExactOptions& opt = {}) {
    return iso_profile(build_cluster_graph(cfg, giant), eps, mode, opt);
}

}  // namespace perciso
