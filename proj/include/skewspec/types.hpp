#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace skewspec {

using Complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Bad inputs: malformed configs, out-of-range parameters. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violated numerical contracts: under-resolved quadrature, non-convergence,
// degenerate leading eigenvalue, exceeded enumeration budget. CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace skewspec
