#pragma once

#include <cstdint>

#include "otslab/field.hpp"

namespace otslab {

/// Random band-limited field with algebraically decaying spectrum,
///   u = floor + offset + sum_{1<=|k|<=modes} a_k e^{ikx},
/// |a_k| ~ |k|^-decay with random magnitude jitter and phases from the
/// seeded generator. The offset shifts the trigonometric part so that
/// min_j u(x_j) >= floor. Deterministic given the seed.
Field random_smooth_field(Grid grid, std::uint64_t seed, double decay, double floor_value,
                          int modes);

} // namespace otslab
