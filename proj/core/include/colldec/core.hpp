#pragma once

#include <array>
#include <cmath>

namespace colldec
{

using Vec3 = std::array<double, 3>;

inline double dot(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(Vec3 const& a)
{
    return std::sqrt(dot(a, a));
}

//---------------------------------------------------------------------------//
/*!
 * Reduced Planck constant and Boltzmann constant.
 *
 * Defaults are the exact SI values. Natural-unit runs set both to one, in
 * which case a "temperature" is an energy kT.
 */
struct PhysicalConstants
{
    double hbar = 1.054571817e-34;  // J s
    double k_boltzmann = 1.380649e-23;  // J / K

    static PhysicalConstants natural() { return {1.0, 1.0}; }

    // Throws ConfigurationError unless both are finite and positive
    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Dilute thermal gas of scatterers: particle mass m, temperature T, number
 * density n. n == 0 is a valid (empty) bath.
 */
class BathParams
{
  public:
    BathParams(double mass, double temperature, double density);

    double mass() const { return mass_; }
    double temperature() const { return temperature_; }
    double density() const { return density_; }

    double kT(PhysicalConstants const& c) const
    {
        return c.k_boltzmann * temperature_;
    }
    double beta(PhysicalConstants const& c) const { return 1.0 / kT(c); }

    BathParams with_density(double density) const
    {
        return {mass_, temperature_, density};
    }

  private:
    double mass_;
    double temperature_;
    double density_;
};

//---------------------------------------------------------------------------//
/*!
 * Heavy Brownian particle of mass M and radius a.
 */
class ParticleParams
{
  public:
    ParticleParams(double mass, double radius);

    double mass() const { return mass_; }
    double radius() const { return radius_; }

  private:
    double mass_;
    double radius_;
};

//---------------------------------------------------------------------------//
/*!
 * Bath-derived unit system in which m = kT = hbar = 1.
 *
 * A quantity x in SI maps to x / scale in internal units. Derived scales
 * (rate, area, density, energy) are products of the four primary ones.
 */
struct UnitScales
{
    double p0 = 1.0;  //!< momentum, sqrt(m kT)
    double l0 = 1.0;  //!< length, hbar / p0
    double t0 = 1.0;  //!< time, m l0^2 / hbar
    double lambda0 = 1.0;  //!< rate per length^2, 1 / (l0^2 t0)
    double m0 = 1.0;  //!< mass, m

    double rate() const { return 1.0 / t0; }
    double area() const { return l0 * l0; }
    double density() const { return 1.0 / (l0 * l0 * l0); }
    double energy() const { return p0 * p0 / m0; }
    double velocity() const { return p0 / m0; }
};

UnitScales make_scales(BathParams const& bath, PhysicalConstants const& consts);

/*!
 * q_th a / hbar with q_th = sqrt(2 m kT). Values below
 * kGeometricLimitWarning mean the constant-amplitude hard-sphere model is
 * a poor description; geometric_limit_quality emits a diagnostic then.
 */
double geometric_limit_quality(BathParams const& bath,
                               ParticleParams const& particle,
                               PhysicalConstants const& consts);

inline constexpr double kGeometricLimitWarning = 10.0;

}  // namespace colldec
