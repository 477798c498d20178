#pragma once

#include <cstdint>
#include <vector>

#include "colldec/core.hpp"

namespace colldec
{

//---------------------------------------------------------------------------//
/*!
 * Per-axis second moments of the Brownian particle.
 *
 * xp is the symmetrized <RP + PR>. Under the decoherence master equation
 * with a free kinetic term:
 *   d xx/dt = xp / M,  d xp/dt = 2 pp / M,  d pp/dt = 2 hbar^2 Lambda.
 */
struct MomentState
{
    double xx = 0.0;
    double xp = 0.0;
    double pp = 0.0;
    double t = 0.0;
};

/*!
 * Integrate the moment equations with classical RK4 from initial.t to
 * t_end. The solution is a cubic in t, which RK4 reproduces exactly, so
 * the step size only matters for the number of states returned. The
 * returned trajectory includes the initial state and ends at t_end.
 */
std::vector<MomentState> evolve_moments(MomentState const& initial,
                                        double lambda, double mass,
                                        double t_end, double dt,
                                        PhysicalConstants const& consts = {});

/// 2 Lambda hbar^2 t^3 / (3 M^2)
double msd_quantum(double lambda, double mass, double t,
                   PhysicalConstants const& consts = {});

/// Hard-sphere drag coefficient xi = (8/3) n a^2 sqrt(2 pi m kT)
double viscosity_hard_sphere(BathParams const& bath,
                             ParticleParams const& particle,
                             PhysicalConstants const& consts = {});

/// Short-time classical result 2 kT xi t^3 / (3 M^2), valid for t << M/xi
double msd_classical(BathParams const& bath, ParticleParams const& particle,
                     double t, PhysicalConstants const& consts = {});

/*!
 * The t^3 coefficient C in <R^2> = C (kT)^(3/2) n m^(1/2) a^2 t^3 / M^2,
 * assembled once from the decoherence side (<q^2 v> -> Lambda -> <R^2>)
 * and once from the classical drag side (xi -> <R^2>).
 */
struct CrossCheck
{
    double c_quantum;
    double c_classical;
};

CrossCheck cross_check_constant(
    PhysicalConstants const& consts = PhysicalConstants::natural(),
    BathParams const& bath = {1.0, 1.0, 1.0},
    ParticleParams const& particle = {1.0, 1.0}, double t = 1.0);

/// (16/9) sqrt(2 pi)
double brownian_constant_closed_form();

//---------------------------------------------------------------------------//
// Classical Langevin oracle
//---------------------------------------------------------------------------//

struct LangevinSpec
{
    double xi = 0.0;  //!< drag coefficient
    std::size_t n_traj = 100'000;
    double dt = 1e-3;
    double t_end = 1.0;
    std::uint64_t seed = 20061;
    std::size_t n_records = 5;  //!< equally spaced output times in (0, t_end]

    /// dt > 0, t_end > 0, and dt <= M / (100 xi) when xi > 0
    void validate(double mass) const;
};

struct LangevinResult
{
    std::vector<double> times;
    std::vector<double> msd;
    std::vector<double> msd_error;  //!< standard error of the mean
    std::vector<double> v2;
    std::vector<double> v2_error;
};

/*!
 * Ensemble of one-axis trajectories M dv = -xi v dt + sqrt(2 xi kT) dW,
 * dx = v dt, started at rest at the origin and advanced with
 * Euler-Maruyama. Trajectories are grouped into blocks with one generator
 * stream each, so output is reproducible for a given seed.
 */
LangevinResult langevin_msd(BathParams const& bath,
                            ParticleParams const& particle,
                            LangevinSpec const& spec,
                            PhysicalConstants const& consts = {});

inline constexpr std::size_t kLangevinBlockSize = 1024;

}  // namespace colldec
