#include "colldec/core.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "colldec/diagnostics.hpp"
#include "colldec/errors.hpp"

namespace colldec
{
namespace
{
void require(bool ok, char const* what)
{
    if (!ok)
    {
        throw ConfigurationError(what);
    }
}

bool positive(double x)
{
    return std::isfinite(x) && x > 0.0;
}
}  // namespace

void PhysicalConstants::validate() const
{
    require(positive(hbar), "hbar must be finite and positive");
    require(positive(k_boltzmann),
            "Boltzmann constant must be finite and positive");
}

BathParams::BathParams(double mass, double temperature, double density)
    : mass_(mass), temperature_(temperature), density_(density)
{
    require(positive(mass_), "bath particle mass must be positive");
    require(positive(temperature_), "bath temperature must be positive");
    require(std::isfinite(density_) && density_ >= 0.0,
            "bath number density must be non-negative");
}

ParticleParams::ParticleParams(double mass, double radius)
    : mass_(mass), radius_(radius)
{
    require(positive(mass_), "Brownian particle mass must be positive");
    require(positive(radius_), "Brownian particle radius must be positive");
}

UnitScales make_scales(BathParams const& bath, PhysicalConstants const& consts)
{
    consts.validate();
    UnitScales s;
    s.m0 = bath.mass();
    s.p0 = std::sqrt(bath.mass() * bath.kT(consts));
    s.l0 = consts.hbar / s.p0;
    s.t0 = bath.mass() * s.l0 * s.l0 / consts.hbar;
    s.lambda0 = 1.0 / (s.l0 * s.l0 * s.t0);
    return s;
}

double geometric_limit_quality(BathParams const& bath,
                               ParticleParams const& particle,
                               PhysicalConstants const& consts)
{
    consts.validate();
    double const q_th = std::sqrt(2.0 * bath.mass() * bath.kT(consts));
    double const ratio = q_th * particle.radius() / consts.hbar;
    if (ratio < kGeometricLimitWarning)
    {
        std::ostringstream os;
        os << "geometric scattering limit is weak: q_th a / hbar = " << ratio
           << " < " << kGeometricLimitWarning;
        emit_diagnostic(os.str());
    }
    return ratio;
}

}  // namespace colldec
