#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace perciso {

/// Exact ratio num/den with den >= 1. Comparisons cross-multiply in 128-bit
/// integers; at torus desk scale (num <= d*n^d, den <= n^d) products fit with
/// room to spare. Used for psi values, phi, and discrete gradients of phi,
/// so solver optimality never depends on floating point.
struct ExactRatio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    ExactRatio() = default;
    ExactRatio(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0) throw std::invalid_argument("ExactRatio: denominator must be positive");
    }

    [[nodiscard]] static ExactRatio reduced(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("ExactRatio: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return ExactRatio(n, d);
    }

    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    [[nodiscard]] ExactRatio abs() const { return ExactRatio(num < 0 ? -num : num, den); }

    [[nodiscard]] std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const ExactRatio& a, const ExactRatio& b) noexcept {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator!=(const ExactRatio& a, const ExactRatio& b) noexcept { return !(a == b); }
    friend bool operator<(const ExactRatio& a, const ExactRatio& b) noexcept {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const ExactRatio& a, const ExactRatio& b) noexcept { return b < a; }
    friend bool operator<=(const ExactRatio& a, const ExactRatio& b) noexcept { return !(b < a); }
    friend bool operator>=(const ExactRatio& a, const ExactRatio& b) noexcept { return !(a < b); }

    /// Exact difference, reduced. Intermediates in 128-bit; the reduced result
    /// must fit in 64-bit (guaranteed at desk scale, checked anyway).
    friend ExactRatio operator-(const ExactRatio& a, const ExactRatio& b) {
        const __int128 n = static_cast<__int128>(a.num) * b.den -
                           static_cast<__int128>(b.num) * a.den;
        const __int128 d = static_cast<__int128>(a.den) * b.den;
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        const __int128 rn = n / g, rd = d / g;
        if (rn > INT64_MAX || rn < INT64_MIN || rd > INT64_MAX)
            throw std::overflow_error("ExactRatio: difference overflows 64-bit");
        return ExactRatio(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd));
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) noexcept {
        while (b != 0) { const __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
};

/// Decimal constant parsed exactly as num/10^k alongside its double value.
/// Event thresholds (c1*n^d vs |C|, c2/n vs phi, ...) compare exactly via
/// 128-bit cross-multiplication, so event truth values are reproducible.
struct DecimalConstant {
    std::int64_t num = 0;
    std::int64_t den = 1;  // power of 10
    double value = 0.0;

    DecimalConstant() = default;

    static DecimalConstant parse(const std::string& text) {
        std::size_t pos = 0;
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        std::int64_t n = 0, d = 1;
        bool any_digit = false, seen_dot = false;
        for (; pos < text.size(); ++pos) {
            const char c = text[pos];
            if (c == '.') {
                if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
                seen_dot = true;
                continue;
            }
            if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: " + text);
            if (n > (INT64_MAX - 9) / 10) throw std::overflow_error("decimal too large: " + text);
            n = n * 10 + (c - '0');
            if (seen_dot) {
                if (d > INT64_MAX / 10) throw std::overflow_error("decimal too precise: " + text);
                d *= 10;
            }
            any_digit = true;
        }
        if (!any_digit) throw std::invalid_argument("bad decimal: " + text);
        DecimalConstant out;
        out.num = neg ? -n : n;
        out.den = d;
        out.value = static_cast<double>(out.num) / static_cast<double>(d);
        return out;
    }

    /// this < value a/b, exact.
    [[nodiscard]] bool less_than(std::int64_t a, std::int64_t b) const noexcept {
        return static_cast<__int128>(num) * b < static_cast<__int128>(a) * den;
    }
    /// this > value a/b, exact.
    [[nodiscard]] bool greater_than(std::int64_t a, std::int64_t b) const noexcept {
        return static_cast<__int128>(num) * b > static_cast<__int128>(a) * den;
    }
};

}  // namespace perciso
