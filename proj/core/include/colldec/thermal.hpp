#pragma once

#include <vector>

#include "colldec/core.hpp"
#include "colldec/estimate.hpp"
#include "colldec/quadrature.hpp"
#include "colldec/random.hpp"

namespace colldec
{

//---------------------------------------------------------------------------//
/*!
 * Maxwell-Boltzmann densities in bath units, where m = kT = 1.
 *
 * mu is the density over momentum vectors, nu the density of the momentum
 * magnitude: nu(q) = 4 pi q^2 mu(|p| = q).
 */
namespace reduced
{
double mu(Vec3 const& p);
double nu(double q);
/// Cumulative distribution of nu
double nu_cdf(double q);

/// Radial cutoff for thermal quadratures, 12 sqrt(2 m kT). The neglected
/// tail carries less than 1e-30 of the probability.
inline constexpr double kMomentumCutoff = 12.0 * 1.4142135623730951;
}  // namespace reduced

//---------------------------------------------------------------------------//
/*!
 * Thermal momentum distribution of a bath, evaluated in SI (or whatever
 * units the bath and constants are given in).
 */
class MomentumDistribution
{
  public:
    explicit MomentumDistribution(BathParams const& bath,
                                  PhysicalConstants const& consts = {});

    double mu(Vec3 const& p) const;
    /// Throws std::domain_error for q < 0
    double nu(double q) const;
    double cdf(double q) const;

    /// Most probable momentum magnitude, sqrt(2 m kT)
    double thermal_momentum() const;
    double cutoff() const;

    UnitScales const& scales() const { return scales_; }

  private:
    UnitScales scales_;
    double mu_norm_;
};

/// <q^2 v> = 4 (m / pi)^(1/2) (2 kT)^(3/2)
double thermal_average_q2v(BathParams const& bath,
                           PhysicalConstants const& consts = {});
/// Radial quadrature of nu(q) q^3 / m
Estimate thermal_average_q2v_quadrature(BathParams const& bath,
                                        PhysicalConstants const& consts = {},
                                        QuadSpec const& spec = {});

/// <v> = sqrt(8 kT / (pi m))
double thermal_average_speed(BathParams const& bath,
                             PhysicalConstants const& consts = {});
Estimate thermal_average_speed_quadrature(BathParams const& bath,
                                          PhysicalConstants const& consts = {},
                                          QuadSpec const& spec = {});

//---------------------------------------------------------------------------//
/*!
 * Draws momentum magnitudes from nu by inverting its CDF.
 *
 * The inverse CDF is a monotone (Fritsch-Carlson) cubic through a fixed
 * table, polished by two Newton steps against the exact CDF. All state
 * lives in the caller's generator.
 */
class SpeedSampler
{
  public:
    explicit SpeedSampler(BathParams const& bath,
                          PhysicalConstants const& consts = {},
                          std::size_t table_size = 2048);

    /// Momentum magnitude in the bath's units
    double operator()(Rng& rng) const;
    /// Momentum magnitude in units of sqrt(m kT)
    double sample_reduced(Rng& rng) const;
    /// Inverse CDF in reduced units, u in [0, 1)
    double inverse_cdf(double u) const;

  private:
    double p0_;
    std::vector<double> u_;
    std::vector<double> q_;
    std::vector<double> slope_;
};

}  // namespace colldec
