#include "colldec/random.hpp"

#include <cmath>
#include <numbers>

namespace colldec
{

Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

std::array<double, 2> standard_normal_pair(Rng& rng)
{
    // 1 - u lies in (0, 1], so the logarithm is finite.
    double const r = std::sqrt(-2.0 * std::log(1.0 - uniform01(rng)));
    double const phi = 2.0 * std::numbers::pi * uniform01(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

Vec3 uniform_unit_vector(Rng& rng)
{
    double const cos_t = 2.0 * uniform01(rng) - 1.0;
    double const phi = 2.0 * std::numbers::pi * uniform01(rng);
    double const sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    return {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
}

}  // namespace colldec
