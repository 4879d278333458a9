#include "otslab/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "otslab/rng.hpp"

namespace otslab {

Field random_smooth_field(Grid grid, std::uint64_t seed, double decay, double floor_value,
                          int modes) {
    if (decay <= 1.0) throw std::invalid_argument("random_smooth_field: decay must be > 1");
    if (floor_value < 0.0) throw std::invalid_argument("random_smooth_field: floor must be >= 0");
    if (modes < 0 || modes > grid.n / 3)
        throw std::invalid_argument("random_smooth_field: modes must lie in [0, n/3]");

    SplitMix64 rng(seed);
    Field u(grid);
    const double h = grid.spacing();
    for (int k = 1; k <= modes; ++k) {
        const double mag = std::pow(static_cast<double>(k), -decay) * (0.5 + rng.next_double());
        const double phase = kTwoPi * rng.next_double();
        for (int j = 0; j < grid.n; ++j)
            u.samples[j] += 2.0 * mag * std::cos(k * h * j + phase);
    }
    double mn = min_sample(u);
    const double offset = mn < 0.0 ? -mn : 0.0;
    for (double& v : u.samples) v += offset + floor_value;
    return u;
}

} // namespace otslab
