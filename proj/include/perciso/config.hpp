#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perciso/rng.hpp"
#include "perciso/torus.hpp"

namespace perciso {

/// One bit per torus edge in canonical EdgeId order; bit = 1 means open.
/// Value type: flips copy, so configurations can be shared across workers.
class Configuration {
public:
    Configuration(TorusSpec spec, bool all_open = false)
        : spec_(spec),
          words_((spec.edge_count() + 63) / 64, all_open ? ~std::uint64_t{0} : 0) {
        if (all_open) mask_tail();
    }

    [[nodiscard]] const TorusSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::int64_t edge_count() const noexcept { return spec_.edge_count(); }

    [[nodiscard]] bool open(EdgeId e) const {
        return (words_[static_cast<std::size_t>(e >> 6)] >> (e & 63)) & 1u;
    }

    void set(EdgeId e, bool value) {
        const auto w = static_cast<std::size_t>(e >> 6);
        const std::uint64_t bit = std::uint64_t{1} << (e & 63);
        if (value) words_[w] |= bit; else words_[w] &= ~bit;
    }

    /// omega^e: differs from this configuration only at e.
    [[nodiscard]] Configuration flipped(EdgeId e) const {
        Configuration out = *this;
        out.words_[static_cast<std::size_t>(e >> 6)] ^= std::uint64_t{1} << (e & 63);
        return out;
    }

    /// (min{omega, omega^e}, max{omega, omega^e}): e forced closed / open.
    [[nodiscard]] std::pair<Configuration, Configuration> extremal_pair(EdgeId e) const {
        Configuration lo = *this, hi = *this;
        lo.set(e, false);
        hi.set(e, true);
        return {lo, hi};
    }

    [[nodiscard]] std::int64_t open_count() const noexcept {
        std::int64_t c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    [[nodiscard]] bool operator==(const Configuration& o) const noexcept {
        return spec_ == o.spec_ && words_ == o.words_;
    }

private:
    void mask_tail() {
        const int rem = static_cast<int>(spec_.edge_count() & 63);
        if (rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    TorusSpec spec_;
    std::vector<std::uint64_t> words_;
};

/// Bernoulli(p) bond percolation. Bit i is set iff u_i < p with
/// u_i = (splitmix64(seed + (i+1)*golden) >> 11) * 2^-53, indexed by the
/// canonical EdgeId, so the sample is bit-exact across implementations and
/// impossible to misorder under parallel generation.
[[nodiscard]] inline Configuration sample_configuration(const TorusSpec& spec, double p,
                                                        std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_configuration: p must be in [0,1]");
    Configuration cfg(spec);
    const std::int64_t m = spec.edge_count();
    for (std::int64_t i = 0; i < m; ++i) {
        if (uniform01(splitmix_at(seed, static_cast<std::uint64_t>(i))) < p)
            cfg.set(i, true);
    }
    return cfg;
}

}  // namespace perciso
