#pragma once

#include <cstdint>
#include <random>

#include "colldec/core.hpp"

namespace colldec
{

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a seeded family. Blocks of
/// Monte-Carlo samples and Langevin trajectories each draw from their own
/// stream, so results do not depend on how work is scheduled.
Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Two independent standard normal deviates (Box-Muller). Written out
/// rather than taken from <random> so sequences match across standard
/// library implementations.
std::array<double, 2> standard_normal_pair(Rng& rng);

/// Uniform direction on the unit sphere.
Vec3 uniform_unit_vector(Rng& rng);

}  // namespace colldec
