#pragma once

#include <stdexcept>
#include <utility>

#include "perciso/percolation.hpp"

namespace perciso {

/// omega^e.
[[nodiscard]] inline Configuration flip(const Configuration& cfg, EdgeId e) {
    return cfg.flipped(e);
}

/// (hat omega^e, check omega^e) = (e forced closed, e forced open).
[[nodiscard]] inline std::pair<Configuration, Configuration> extremal_pair(
    const Configuration& cfg, EdgeId e) {
    return cfg.extremal_pair(e);
}

/// Discrete gradient nabla_e f(omega) = f(omega) - f(omega^e).
/// f may return double or ExactRatio; for rational f the difference is exact.
template <typename F>
[[nodiscard]] auto grad(F&& f, const Configuration& cfg, EdgeId e) {
    return f(cfg) - f(cfg.flipped(e));
}

/// The six-way case split on (endpoint membership in C(omega), omega(e)).
/// Case 4 divides on whether C(omega) \ C(omega^e) is empty (4a) or not (4b).
/// Case 6 (e open, exactly one endpoint in C) cannot occur: an open edge
/// incident to C stays inside C.
enum class FlipCase { Case1, Case2, Case3, Case4a, Case4b, Case5, Case6 };

[[nodiscard]] inline const char* to_string(FlipCase c) noexcept {
    switch (c) {
        case FlipCase::Case1: return "case1";
        case FlipCase::Case2: return "case2";
        case FlipCase::Case3: return "case3";
        case FlipCase::Case4a: return "case4a";
        case FlipCase::Case4b: return "case4b";
        case FlipCase::Case5: return "case5";
        case FlipCase::Case6: return "case6";
    }
    return "?";
}

[[nodiscard]] inline FlipCase classify_case(const Configuration& cfg, EdgeId e,
                                            const GiantComponent& giant) {
    const auto ends = cfg.spec().edge_endpoints(e);
    const bool x_in = giant.contains(ends.from);
    const bool y_in = giant.contains(ends.to);
    const bool open = cfg.open(e);
    if (!x_in && !y_in) return open ? FlipCase::Case2 : FlipCase::Case1;
    if (x_in && y_in) {
        if (!open) return FlipCase::Case3;
        // 4a iff closing e removes nothing from the giant.
        const GiantComponent after = giant_component(cfg.flipped(e));
        for (VertexId v : giant.vertices) {
            if (!after.contains(v)) return FlipCase::Case4b;
        }
        return FlipCase::Case4a;
    }
    if (open)
        throw std::logic_error("classify_case: open edge with one endpoint in the giant");
    return FlipCase::Case5;
}

[[nodiscard]] inline FlipCase classify_case(const Configuration& cfg, EdgeId e) {
    return classify_case(cfg, e, giant_component(cfg));
}

}  // namespace perciso
