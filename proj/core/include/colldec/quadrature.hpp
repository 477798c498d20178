#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "colldec/estimate.hpp"
#include "colldec/random.hpp"

namespace colldec
{

//---------------------------------------------------------------------------//
/*!
 * Settings for the adaptive Gauss-Legendre integrator.
 *
 * Each panel is integrated with a nodes_per_panel-point rule, once over the
 * whole panel and once over its two halves; the difference is the panel's
 * error estimate. The panel with the largest error is bisected until the
 * summed error is below max(abs_tol, rel_tol * |value|).
 */
struct QuadSpec
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    std::size_t max_subdivisions = 2000;
    std::size_t nodes_per_panel = 16;

    void validate() const;

    /// Same spec with both tolerances scaled by `factor`.
    QuadSpec tightened(double factor) const;
};

struct MCSpec
{
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 20061;

    void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached per thread; valid for the lifetime of the calling thread.
GaussRule const& gauss_legendre(std::size_t n);

using Integrand1D = std::function<double(double)>;

Estimate integrate_1d(Integrand1D const& fn, double lo, double hi,
                      QuadSpec const& spec = {});

/*!
 * Same as integrate_1d, with the initial panels given by a sorted list of
 * breakpoints (first and last are the integration limits). Use this to
 * place panel edges at kinks or to pre-split oscillatory integrands.
 */
Estimate integrate_1d(Integrand1D const& fn,
                      std::span<double const> breakpoints,
                      QuadSpec const& spec = {});

/// Uniform breakpoints on [lo, hi] such that no panel is wider than
/// max_width (at least one panel).
std::vector<double> uniform_breakpoints(double lo, double hi,
                                        double max_width);

/*!
 * (1 / 4 pi) \int dn1 \int dn2 fn over two unit vectors, for integrands
 * that depend on the polar angles theta1, theta2 and the azimuth
 * difference dphi only. The free overall azimuth contributes 2 pi.
 */
using PairIntegrand = std::function<double(double theta1, double theta2,
                                           double dphi)>;
Estimate integrate_sphere_pair(PairIntegrand const& fn,
                               QuadSpec const& spec = {});

//---------------------------------------------------------------------------//
// Monte Carlo
//---------------------------------------------------------------------------//

/// Draw one sample point from rng and return the integrand there.
using MCSampler = std::function<double(Rng&)>;

/// Draw one sample and write one value per component into `out`.
using MCVectorSampler = std::function<void(Rng&, std::span<double>)>;

/*!
 * Sample mean with its standard error. Samples are drawn in fixed-size
 * blocks with one generator stream per block and reduced in block order,
 * so a given spec yields bit-identical results on any number of threads.
 */
Estimate mc_integrate(MCSampler const& sample, MCSpec const& spec);

std::vector<Estimate> mc_integrate(std::size_t n_components,
                                   MCVectorSampler const& sample,
                                   MCSpec const& spec);

inline constexpr std::size_t kMCBlockSize = 16384;

}  // namespace colldec
