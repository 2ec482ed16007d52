#pragma once
// Shared test utilities: deterministic RNG draws and tolerance helpers.

#include <complex>
#include <random>

namespace testutil {

using C = std::complex<double>;

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Uniform in the closed disc of the given radius.
inline C disc(double radius = 1.0) {
    while (true) {
        double x = uniform(-1, 1), y = uniform(-1, 1);
        if (x * x + y * y <= 1.0) return C{radius * x, radius * y};
    }
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1 + std::max(std::abs(a), std::abs(b)));
}

inline bool close(C a, C b, double tol) { return std::abs(a - b) <= tol; }

} // namespace testutil
