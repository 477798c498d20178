#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library's integrators or samplers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>

#include "colldec/core.hpp"

namespace colldec::testing
{

inline double rel_err(double value, double truth)
{
    return std::abs(value - truth) / std::abs(truth);
}

/// Composite Simpson rule with n (even) intervals.
inline double simpson(std::function<double(double)> const& f, double lo,
                      double hi, std::size_t n)
{
    if (n % 2)
    {
        ++n;
    }
    double const h = (hi - lo) / static_cast<double>(n);
    double s = f(lo) + f(hi);
    for (std::size_t i = 1; i < n; ++i)
    {
        s += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
    }
    return s * h / 3.0;
}

/// Speed density in units m = kT = 1.
inline double maxwell_speed_density(double q)
{
    return std::sqrt(2.0 / std::numbers::pi) * q * q * std::exp(-0.5 * q * q);
}

inline double maxwell_speed_cdf(double q)
{
    return std::erf(q / std::numbers::sqrt2)
           - std::sqrt(2.0 / std::numbers::pi) * q * std::exp(-0.5 * q * q);
}

/*!
 * Hard-sphere F(R) in units m = kT = hbar = 1, using the closed-form
 * angular integral
 *   \int dOmega (1 - sinc(2 q R sin(theta/2))) a^2/4 = pi a^2 (1 - sinc^2(q R)).
 */
inline double hard_sphere_f_of_r(double density, double radius, double r,
                                 std::size_t intervals = 400000)
{
    auto g = [r](double q) {
        double const x = q * r;
        double const s = x == 0.0 ? 1.0 : std::sin(x) / x;
        return 1.0 - s * s;
    };
    double const integral = simpson(
        [&](double q) { return maxwell_speed_density(q) * q * g(q); }, 0.0,
        12.0 * std::numbers::sqrt2, intervals);
    return density * std::numbers::pi * radius * radius * integral;
}

/// Uniform unit vector from a normalized Gaussian triple.
inline Vec3 gaussian_direction(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    double const n = norm(v);
    return {v[0] / n, v[1] / n, v[2] / n};
}

/// Minimal hand-rolled generator for property checks.
class PropertyGen
{
  public:
    explicit PropertyGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    /// log-uniform in [lo, hi]
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

  private:
    std::mt19937_64 rng_;
};

// Frozen reference values (m = kT = hbar = n = a = 1), evaluated with
// 30-digit mpmath quadrature of the defining integrals.
inline constexpr double kMuAtZero = 0.063493635934240970;
inline constexpr double kQ2V = 6.3830764864229233;
inline constexpr double kMeanSpeed = 1.5957691216057307;
inline constexpr double kLambdaHardSphere = 6.6843420656826680;
inline constexpr double kFInfinityHardSphere = 5.0132565492620010;
inline constexpr double kViscosity = 6.6843420656826680;
inline constexpr double kBrownianC = 4.4562280437884453;

}  // namespace colldec::testing
