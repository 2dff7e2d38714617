#pragma once

#include <stdexcept>
#include <string>

namespace perciso {

// phi is undefined when the giant component has fewer than 2 vertices:
// there is no nonempty A with 2|A| <= |C|.
class phi_undefined_error : public std::domain_error {
public:
    explicit phi_undefined_error(const std::string& what)
        : std::domain_error(what) {}
};

// A size guard rejected the instance (brute-force enumeration limit,
// solver work budget). Carries the offending value for reporting.
class guard_error : public std::runtime_error {
public:
    guard_error(const std::string& what, long long value)
        : std::runtime_error(what), value_(value) {}
    [[nodiscard]] long long value() const noexcept { return value_; }

private:
    long long value_;
};

}  // namespace perciso
