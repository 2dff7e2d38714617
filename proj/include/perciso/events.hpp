#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "perciso/exact_solver.hpp"
#include "perciso/flips.hpp"

namespace perciso {

/// Constants of the event system H_n(c1..c5), the profile event G_n(c6), and
/// the gradient-bound constant. These are empirical knobs, not derived
/// values; thresholds compare exactly via the decimal representation.
struct EventConstants {
    DecimalConstant c1, c2, c3, c4, c5, c6, claim_constant;

    static EventConstants defaults() {
        EventConstants k;
        k.c1 = DecimalConstant::parse("0.4");
        k.c2 = DecimalConstant::parse("0.1");
        k.c3 = DecimalConstant::parse("10");
        k.c4 = DecimalConstant::parse("0.01");
        k.c5 = DecimalConstant::parse("0.01");
        k.c6 = DecimalConstant::parse("0.1");
        k.claim_constant = DecimalConstant::parse("16");
        return k;
    }

    void validate() const {
        const DecimalConstant* all[] = {&c1, &c2, &c3, &c4, &c5, &c6, &claim_constant};
        const char* names[] = {"c1", "c2", "c3", "c4", "c5", "c6", "C_claim"};
        for (int i = 0; i < 7; ++i) {
            if (all[i]->num <= 0)
                throw std::invalid_argument(std::string("constants: ") + names[i] +
                                            " must be positive");
        }
        // c2 < c3
        if (!(static_cast<__int128>(c2.num) * c3.den < static_cast<__int128>(c3.num) * c2.den))
            throw std::invalid_argument("constants: require c2 < c3");
    }

    /// key=value lines; keys c1..c6, C_claim; '#' comments and blank lines
    /// allowed; unknown keys rejected; missing keys keep their defaults.
    static EventConstants parse(std::istream& in) {
        EventConstants k = defaults();
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                     line.back() == '\r'))
                line.pop_back();
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("constants file line " + std::to_string(lineno) +
                                            ": expected key=value");
            std::string key = line.substr(start, eq - start);
            while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
            std::string value = line.substr(eq + 1);
            const auto vs = value.find_first_not_of(" \t");
            value = vs == std::string::npos ? "" : value.substr(vs);
            const DecimalConstant parsed = DecimalConstant::parse(value);
            if (key == "c1") k.c1 = parsed;
            else if (key == "c2") k.c2 = parsed;
            else if (key == "c3") k.c3 = parsed;
            else if (key == "c4") k.c4 = parsed;
            else if (key == "c5") k.c5 = parsed;
            else if (key == "c6") k.c6 = parsed;
            else if (key == "C_claim") k.claim_constant = parsed;
            else
                throw std::invalid_argument("constants file line " + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
        }
        k.validate();
        return k;
    }

    static EventConstants from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open constants file: " + path);
        return parse(in);
    }
};

struct EventDetails {
    std::int64_t giant_size = 0;
    bool phi_defined = false;
    ExactRatio phi;
    std::int64_t max_minimizer_size = -1;
    std::int64_t max_sym_diff = 0;
    EdgeId max_sym_diff_edge = -1;
    EdgeId h5_fail_edge = -1;
    double iso_value = 0.0;
    double iso_threshold = 0.0;
    double epsilon = 0.0;
};

/// Truth values of H_n^1..H_n^5 and G_n. h_all is the conjunction of the
/// five H events; G_n is reported alongside but is not part of H_n.
struct EventReport {
    bool h1 = false, h2 = false, h3 = false, h4 = false, h5 = false;
    bool g = false;
    bool h_all = false;
    EventDetails details;
};

namespace detail {

/// "exists a minimizer A with |A| > c * n^d" for the cluster behind `graph`,
/// answered with as little work as possible:
///   - threshold < 1: any minimizer qualifies, and one exists since phi is
///     defined (the component has >= 2 vertices);
///   - otherwise, a cheap optimal witness may already qualify;
///   - otherwise the maximum-cardinality minimizer decides.
[[nodiscard]] inline bool large_minimizer_exists(const ClusterGraph& graph,
                                                 const DecimalConstant& c, std::int64_t nd,
                                                 const ExactOptions& opt,
                                                 SolveMode mode) {
    if (graph.m < 2) return false;
    if (c.less_than(1, nd)) return true;  // c*n^d < 1 <= any minimizer size
    const CheegerResult quick =
        mode == SolveMode::brute ? cheeger_brute(graph) : cheeger_exact_phi(graph, opt);
    if (c.less_than(quick.witness.size(), nd)) return true;
    const CheegerResult full =
        mode == SolveMode::brute ? cheeger_brute(graph) : cheeger_exact(graph, opt);
    return c.less_than(full.max_minimizer_size, nd);
}

}  // namespace detail

/// Evaluate the event system on one configuration. `base` is the optimal
/// Cheeger solve of the giant when phi is defined (mode brute or exact).
[[nodiscard]] inline EventReport check_events_with_base(
    const Configuration& cfg, const EventConstants& k, SolveMode mode,
    const GiantComponent& giant, const CheegerResult* base,
    const ExactOptions& opt = {}) {
    if (mode == SolveMode::heuristic)
        throw std::invalid_argument("check_events: events need an optimal solver mode");
    const TorusSpec& spec = cfg.spec();
    const std::int64_t nd = spec.vertex_count();
    const std::int64_t n = spec.n();

    EventReport rep;
    rep.details.giant_size = giant.size;
    rep.details.phi_defined = giant.size >= 2;

    // h1: |C| > c1 n^d
    rep.h1 = k.c1.less_than(giant.size, nd);

    if (rep.details.phi_defined) {
        rep.details.phi = base->phi;
        rep.details.max_minimizer_size = base->max_minimizer_size;
        // h2: c2/n < phi < c3/n, exact
        rep.h2 = k.c2.less_than(base->phi.num * n, base->phi.den) &&
                 k.c3.greater_than(base->phi.num * n, base->phi.den);
        // h4: exists minimizer larger than c4 n^d
        if (k.c4.less_than(1, nd) || k.c4.less_than(base->witness.size(), nd) ||
            k.c4.less_than(base->max_minimizer_size, nd))
            rep.h4 = true;
    }

    // h3 and h5 walk every edge; h3 compares |C delta C^e| <= sqrt(n) as
    // reals, i.e. diff^2 <= n in integers.
    const std::int64_t threshold_sq = n;
    rep.h3 = true;
    rep.h5 = rep.details.phi_defined;
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const Configuration flipped = cfg.flipped(e);
        const GiantComponent after = giant_component(flipped);
        std::int64_t diff = 0;
        {
            auto ia = giant.vertices.begin();
            auto ib = after.vertices.begin();
            while (ia != giant.vertices.end() && ib != after.vertices.end()) {
                if (*ia < *ib) { ++diff; ++ia; }
                else if (*ib < *ia) { ++diff; ++ib; }
                else { ++ia; ++ib; }
            }
            diff += (giant.vertices.end() - ia) + (after.vertices.end() - ib);
        }
        if (diff > rep.details.max_sym_diff) {
            rep.details.max_sym_diff = diff;
            rep.details.max_sym_diff_edge = e;
        }
        if (diff * diff > threshold_sq) rep.h3 = false;

        if (rep.h5) {
            bool ok = false;
            if (after.size >= 2) {
                if (k.c5.less_than(1, nd)) {
                    ok = true;  // any minimizer exceeds a sub-unit threshold
                } else {
                    const ClusterGraph graph2 = build_cluster_graph(flipped, after);
                    ok = detail::large_minimizer_exists(graph2, k.c5, nd, opt, mode);
                }
            }
            if (!ok) {
                rep.h5 = false;
                rep.details.h5_fail_edge = e;
            }
        }
    }

    // G_n: I_{eps(n)}(C) >= c6 * n^(d/eps - 1)
    if (rep.details.phi_defined) {
        const double eps = epsilon_n(spec);
        const ClusterGraph graph = build_cluster_graph(cfg, giant);
        const IsoProfileResult iso =
            mode == SolveMode::brute ? iso_profile_brute(graph, eps)
                                     : iso_profile_exact(graph, eps, opt);
        rep.details.epsilon = eps;
        rep.details.iso_value = iso.value;
        rep.details.iso_threshold =
            k.c6.value * std::pow(static_cast<double>(n),
                                  static_cast<double>(spec.d()) / eps - 1.0);
        rep.g = iso.value >= rep.details.iso_threshold;
    }

    rep.h_all = rep.h1 && rep.h2 && rep.h3 && rep.h4 && rep.h5;
    return rep;
}

[[nodiscard]] inline EventReport check_events(const Configuration& cfg, const EventConstants& k,
                                              SolveMode mode = SolveMode::exact,
                                              const ExactOptions& opt = {}) {
    const GiantComponent giant = giant_component(cfg);
    if (giant.size < 2)
        return check_events_with_base(cfg, k, mode, giant, nullptr, opt);
    const ClusterGraph graph = build_cluster_graph(cfg, giant);
    const CheegerResult base =
        mode == SolveMode::brute ? cheeger_brute(graph) : cheeger_exact(graph, opt);
    return check_events_with_base(cfg, k, mode, giant, &base, opt);
}

enum class ClaimStatus { holds, violated, not_applicable };

/// Gradient-bound verification: sup over edges of |phi(w) - phi(w^e)|,
/// exact, against claim_constant / n^d, evaluated only when w is in H_n.
struct ClaimReport {
    bool in_hn = false;
    ExactRatio sup_grad;
    EdgeId sup_edge = -1;
    double bound = 0.0;
    ClaimStatus status = ClaimStatus::not_applicable;
    int undefined_edges = 0;  // flips where phi(w^e) is undefined
    EventReport events;
};

[[nodiscard]] inline ClaimReport verify_gradient_claim(const Configuration& cfg,
                                                       const EventConstants& k,
                                                       SolveMode mode = SolveMode::exact,
                                                       const ExactOptions& opt = {}) {
    const TorusSpec& spec = cfg.spec();
    ClaimReport rep;
    rep.events = check_events(cfg, k, mode, opt);
    rep.in_hn = rep.events.h_all;
    if (!rep.events.details.phi_defined) return rep;

    const GiantComponent giant = giant_component(cfg);
    const ClusterGraph graph = build_cluster_graph(cfg, giant);
    const ExactRatio phi =
        (mode == SolveMode::brute ? cheeger_brute(graph) : cheeger_exact_phi(graph, opt)).phi;

    rep.sup_grad = ExactRatio(0, 1);
    for (EdgeId e = 0; e < spec.edge_count(); ++e) {
        const auto ends = spec.edge_endpoints(e);
        const Configuration flipped = cfg.flipped(e);
        const GiantComponent after = giant_component(flipped);
        // Edges untouched by C leave the instance identical (gradient 0),
        // unless the flip promoted a merged outside cluster to giant.
        if (!giant.contains(ends.from) && !giant.contains(ends.to) &&
            after.vertices == giant.vertices)
            continue;
        if (after.size < 2) { ++rep.undefined_edges; continue; }
        const ClusterGraph g2 = build_cluster_graph(flipped, after);
        const ExactRatio phi_e = (mode == SolveMode::brute ? cheeger_brute(g2)
                                                           : cheeger_exact_phi(g2, opt)).phi;
        const ExactRatio g_abs = (phi - phi_e).abs();
        if (g_abs > rep.sup_grad) {
            rep.sup_grad = g_abs;
            rep.sup_edge = e;
        }
    }

    const std::int64_t nd = spec.vertex_count();
    rep.bound = k.claim_constant.value / static_cast<double>(nd);
    if (rep.in_hn) {
        // sup <= C/n^d exact: sup.num * n^d * C.den <= C.num * sup.den
        const bool ok = static_cast<__int128>(rep.sup_grad.num) * nd * k.claim_constant.den <=
                        static_cast<__int128>(k.claim_constant.num) * rep.sup_grad.den;
        rep.status = ok ? ClaimStatus::holds : ClaimStatus::violated;
    }
    return rep;
}

}  // namespace perciso
