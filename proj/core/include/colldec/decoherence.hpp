#pragma once

#include <span>
#include <vector>

#include "colldec/core.hpp"
#include "colldec/estimate.hpp"
#include "colldec/quadrature.hpp"
#include "colldec/scattering.hpp"

namespace colldec
{

struct FCurvePoint
{
    double separation;  //!< R, length
    double rate;  //!< F(R)
    double error;  //!< quadrature error estimate of F(R)
};

/// Diffusion parameter, large-separation rate, and a sampled F(R).
struct DecoherenceResult
{
    double lambda = 0.0;  //!< rate per length^2
    double f_infinity = 0.0;  //!< rate
    std::vector<FCurvePoint> curve;
};

//---------------------------------------------------------------------------//
/*!
 * Decoherence rate F(R) for a separation of length R.
 *
 * Averaging the phase factor over the direction of R reduces the rate to
 *   F(R) = n \int dq nu(q) (q/m) \int dOmega [1 - sinc(2 q R sin(theta/2) / hbar)] |f(q,theta)|^2,
 * which is integrated adaptively in q and u = sin(theta/2). Angular
 * panels are cut so that none spans more than pi/2 of phase.
 */
Estimate f_of_r_reduced(ScatteringModel const& model, BathParams const& bath,
                        double separation,
                        PhysicalConstants const& consts = {},
                        QuadSpec const& spec = {});

/// Real and imaginary parts of a complex Monte-Carlo estimate.
struct ComplexEstimate
{
    Estimate real;
    Estimate imag;
};

/*!
 * Monte-Carlo evaluation of F for a separation vector, directly from the
 * momentum-vector form
 *   n \int d^3p mu(p) (p/m) \int dn [1 - exp(i (p - p n) . R / hbar)] |f|^2.
 * The imaginary part vanishes for isotropic models and is returned for
 * checking only.
 */
ComplexEstimate f_of_r_full(ScatteringModel const& model,
                            BathParams const& bath, Vec3 const& separation,
                            PhysicalConstants const& consts = {},
                            MCSpec const& spec = {});

/*!
 * Lambda = (2/3)(n / hbar^2) \int dq nu(q) (q/m) q^2 \int dOmega sin^2(theta/2) |f|^2,
 * the coefficient of R^2 in F at small separation.
 */
Estimate lambda_quadrature(ScatteringModel const& model,
                           BathParams const& bath,
                           PhysicalConstants const& consts = {},
                           QuadSpec const& spec = {});

/// Lambda = n pi a^2 <q^2 v> / (3 hbar^2)
double lambda_hard_sphere(BathParams const& bath,
                          ParticleParams const& particle,
                          PhysicalConstants const& consts = {});

/// Large-separation limit n \int dq nu(q) (q/m) sigma(q) = <n v sigma>
Estimate f_infinity(ScatteringModel const& model, BathParams const& bath,
                    PhysicalConstants const& consts = {},
                    QuadSpec const& spec = {});

/*!
 * First-order single-collision attenuation 1 - T F after elapsed time T.
 * Only meaningful for T F << 1; a diagnostic is emitted for T F > 0.5.
 */
double eta_single_collision(double rate, double elapsed);

struct AngularIdentity
{
    Estimate lhs;  //!< MC average of [(n1 - n2) . R]^2 over directions of R
    double rhs;  //!< (4/3) sin^2(theta/2)
};

/// Direction average of [(n1 - n2) . Rhat]^2 for unit vectors at angle theta.
AngularIdentity angular_identity_check(double theta, MCSpec const& spec = {});

/// Lambda, F(infinity), and F at each separation.
DecoherenceResult compute_decoherence(ScatteringModel const& model,
                                      BathParams const& bath,
                                      std::span<double const> separations,
                                      PhysicalConstants const& consts = {},
                                      QuadSpec const& spec = {});

/// 1 - sin(x)/x, accurate for small x
double one_minus_sinc(double x);

}  // namespace colldec
