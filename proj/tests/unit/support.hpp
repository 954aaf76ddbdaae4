#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "flowlab/field_core.hpp"

namespace testsupport {

inline constexpr double pi = std::numbers::pi;

// splitmix64
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int sign() { return (next() & 1u) ? 1 : -1; }
};

inline double max_abs_error(const flowlab::ScalarField2D& f, double (*exact)(double, double)) {
    const auto& g = f.grid();
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (f.valid(i, j)) e = std::max(e, std::abs(f(i, j) - exact(g.x(i), g.y(j))));
    return e;
}

}  // namespace testsupport
