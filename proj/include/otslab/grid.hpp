#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace otslab {

inline constexpr double kPi = 3.1415926535897932384626433832795;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic discretization of the torus [0, 2*pi).
///
/// Modes are integers, so the |k|^alpha multipliers of the fractional
/// Laplacian apply literally. Point counts are restricted to powers of
/// two (>= 8) for the fast transform path.
struct Grid {
    int n = 0;

    Grid() = default;
    explicit Grid(int points) : n(points) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: point count must be a power of two >= 8");
    }

    double length() const { return kTwoPi; }
    double spacing() const { return kTwoPi / n; }
    double x(int j) const { return spacing() * j; }

    bool operator==(const Grid& other) const { return n == other.n; }
};

} // namespace otslab
