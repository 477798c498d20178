#include "colldec/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "colldec/diagnostics.hpp"
#include "colldec/errors.hpp"
#include "colldec/parallel.hpp"
#include "colldec/random.hpp"
#include "colldec/thermal.hpp"

namespace colldec
{
namespace
{
using std::numbers::pi;

// Largest thermal probability that may fall outside a tabulated q range.
constexpr double kMaxUncoveredMass = 1e-12;
// Widest initial q panel, in units of sqrt(m kT).
constexpr double kMomentumPanel = 2.0;

/// Scattering problem expressed in bath units (m = kT = hbar = 1).
struct ReducedProblem
{
    UnitScales scales;
    ScatteringModel model;
    double density;
    std::vector<double> q_breaks;
    std::vector<double> u_kinks;  // sin(theta/2) at tabulated angles
};

std::vector<double> merged(std::vector<double> a, std::vector<double> const& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end(),
                        [](double x, double y) {
                            return std::abs(x - y)
                                   <= 1e-14 * std::max(1.0, std::abs(y));
                        }),
            a.end());
    return a;
}

ReducedProblem reduce(ScatteringModel const& model, BathParams const& bath,
                      PhysicalConstants const& consts)
{
    auto const s = make_scales(bath, consts);
    ReducedProblem rp{s, model.rescaled(s.p0, s.l0),
                      bath.density() * s.l0 * s.l0 * s.l0, {}, {}};

    auto const [dom_lo, dom_hi] = rp.model.q_domain();
    double const q_lo = std::max(0.0, dom_lo);
    double const q_hi = std::min(reduced::kMomentumCutoff, dom_hi);
    double const uncovered = (q_lo < q_hi)
                                 ? reduced::nu_cdf(q_lo)
                                       + (1.0 - reduced::nu_cdf(q_hi))
                                 : 1.0;
    if (uncovered > kMaxUncoveredMass)
    {
        std::ostringstream os;
        os << "tabulated cross section does not cover the thermal momentum "
              "range (uncovered probability "
           << uncovered << ")";
        throw ConfigurationError(os.str());
    }

    std::vector<double> inner;
    for (double q : rp.model.kink_momenta())
    {
        if (q > q_lo && q < q_hi)
        {
            inner.push_back(q);
        }
    }
    rp.q_breaks = merged(uniform_breakpoints(q_lo, q_hi, kMomentumPanel),
                         inner);
    for (double theta : rp.model.kink_angles())
    {
        rp.u_kinks.push_back(std::sin(0.5 * theta));
    }
    return rp;
}

// |f|^2 at momentum q and u = sin(theta/2)
double f2_at(ScatteringModel const& model, double q, double u)
{
    double const theta = std::min(pi, 2.0 * std::asin(std::min(1.0, u)));
    return model.dsigma_domega(q, theta);
}

std::vector<double> angular_breaks(ReducedProblem const& rp, double phase_rate)
{
    // phase = phase_rate * u; keep each panel within pi/2 of phase
    double const width = phase_rate > 0.0 ? 0.5 * pi / phase_rate : INFINITY;
    return merged(uniform_breakpoints(0.0, 1.0, width), rp.u_kinks);
}

Estimate scaled(Estimate e, double unit)
{
    e.value *= unit;
    e.error_estimate *= unit;
    return e;
}

// Nested quadrature keeps going past a failed panel so the caller can report
// the best estimate of the final quantity rather than of one inner integral.
class ConvergenceGuard
{
  public:
    template<class F>
    Estimate operator()(F&& integrate)
    {
        try
        {
            return integrate();
        }
        catch (NonConvergenceError const& e)
        {
            if (message_.empty())
            {
                message_ = e.what();
            }
            return e.best_estimate();
        }
    }

    Estimate finish(Estimate e) const
    {
        if (!message_.empty())
        {
            throw NonConvergenceError(message_, e);
        }
        return e;
    }

  private:
    std::string message_;
};
}  // namespace

double one_minus_sinc(double x)
{
    double const x2 = x * x;
    if (std::abs(x) < 0.1)
    {
        return x2 / 6.0
               * (1.0
                  - x2 / 20.0
                        * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))));
    }
    return 1.0 - std::sin(x) / x;
}

//---------------------------------------------------------------------------//
Estimate f_of_r_reduced(ScatteringModel const& model, BathParams const& bath,
                        double separation, PhysicalConstants const& consts,
                        QuadSpec const& spec)
{
    if (!(separation >= 0.0) || !std::isfinite(separation))
    {
        throw std::invalid_argument("separation must be finite and >= 0");
    }
    auto const rp = reduce(model, bath, consts);
    double const r = separation / rp.scales.l0;
    QuadSpec const inner = spec.tightened(0.1);

    std::size_t evals = 0;
    double max_rel_inner = 0.0;
    ConvergenceGuard guard;
    auto angular = [&](double q) {
        double const k = 2.0 * q * r;
        auto const bp = angular_breaks(rp, k);
        Estimate e = guard([&] {
            return integrate_1d(
                [&](double u) {
                    return u * one_minus_sinc(k * u) * f2_at(rp.model, q, u);
                },
                bp, inner);
        });
        evals += e.evaluations;
        if (e.value > 0.0)
        {
            max_rel_inner = std::max(max_rel_inner,
                                     e.error_estimate / e.value);
        }
        return 8.0 * pi * e.value;
    };

    Estimate outer = guard([&] {
        return integrate_1d(
            [&](double q) { return reduced::nu(q) * q * angular(q); },
            rp.q_breaks, spec);
    });
    Estimate f{rp.density * outer.value,
               rp.density * (outer.error_estimate
                             + max_rel_inner * std::abs(outer.value)),
               evals};
    return guard.finish(scaled(f, rp.scales.rate()));
}

//---------------------------------------------------------------------------//
ComplexEstimate f_of_r_full(ScatteringModel const& model,
                            BathParams const& bath, Vec3 const& separation,
                            PhysicalConstants const& consts,
                            MCSpec const& spec)
{
    auto const rp = reduce(model, bath, consts);
    double const inv_l0 = 1.0 / rp.scales.l0;
    Vec3 const r{separation[0] * inv_l0, separation[1] * inv_l0,
                 separation[2] * inv_l0};
    double const n = rp.density;

    auto const parts = mc_integrate(
        2,
        [&](Rng& rng, std::span<double> out) {
            auto const g01 = standard_normal_pair(rng);
            auto const g2 = standard_normal_pair(rng);
            Vec3 const p{g01[0], g01[1], g2[0]};
            Vec3 const nhat = uniform_unit_vector(rng);
            double const q = norm(p);
            double cos_theta = q > 0.0 ? dot(p, nhat) / q : 1.0;
            cos_theta = std::clamp(cos_theta, -1.0, 1.0);
            double const f2 = rp.model.dsigma_domega(q, std::acos(cos_theta));
            double const w = n * q * 4.0 * pi * f2;
            Vec3 const dp{p[0] - q * nhat[0], p[1] - q * nhat[1],
                          p[2] - q * nhat[2]};
            double const phase = dot(dp, r);
            double const half_sin = std::sin(0.5 * phase);
            out[0] = w * 2.0 * half_sin * half_sin;
            out[1] = -w * std::sin(phase);
        },
        spec);
    double const unit = rp.scales.rate();
    return {scaled(parts[0], unit), scaled(parts[1], unit)};
}

//---------------------------------------------------------------------------//
Estimate lambda_quadrature(ScatteringModel const& model,
                           BathParams const& bath,
                           PhysicalConstants const& consts,
                           QuadSpec const& spec)
{
    auto const rp = reduce(model, bath, consts);
    QuadSpec const inner = spec.tightened(0.1);
    auto const ubp = angular_breaks(rp, 0.0);

    std::size_t evals = 0;
    double max_rel_inner = 0.0;
    ConvergenceGuard guard;
    auto angular = [&](double q) {
        Estimate e = guard([&] {
            return integrate_1d(
                [&](double u) { return u * u * u * f2_at(rp.model, q, u); },
                ubp, inner);
        });
        evals += e.evaluations;
        if (e.value > 0.0)
        {
            max_rel_inner = std::max(max_rel_inner,
                                     e.error_estimate / e.value);
        }
        return 8.0 * pi * e.value;
    };
    Estimate outer = guard([&] {
        return integrate_1d(
            [&](double q) { return reduced::nu(q) * q * q * q * angular(q); },
            rp.q_breaks, spec);
    });
    double const pref = 2.0 / 3.0 * rp.density;
    Estimate lam{pref * outer.value,
                 pref * (outer.error_estimate
                         + max_rel_inner * std::abs(outer.value)),
                 evals};
    return guard.finish(scaled(lam, rp.scales.lambda0));
}

double lambda_hard_sphere(BathParams const& bath,
                          ParticleParams const& particle,
                          PhysicalConstants const& consts)
{
    consts.validate();
    double const a = particle.radius();
    return bath.density() * pi * a * a * thermal_average_q2v(bath, consts)
           / (3.0 * consts.hbar * consts.hbar);
}

Estimate f_infinity(ScatteringModel const& model, BathParams const& bath,
                    PhysicalConstants const& consts, QuadSpec const& spec)
{
    auto const rp = reduce(model, bath, consts);
    QuadSpec const inner = spec.tightened(0.1);
    ConvergenceGuard guard;
    auto sigma = [&](double q) {
        if (rp.model.is_hard_sphere())
        {
            return rp.model.sigma_total(q, inner);
        }
        return guard([&] { return sigma_total_quadrature(rp.model, q, inner); })
            .value;
    };
    Estimate outer = guard([&] {
        return integrate_1d(
            [&](double q) { return reduced::nu(q) * q * sigma(q); },
            rp.q_breaks, spec);
    });
    return guard.finish(scaled({rp.density * outer.value,
                                rp.density * outer.error_estimate,
                                outer.evaluations},
                               rp.scales.rate()));
}

//---------------------------------------------------------------------------//
double eta_single_collision(double rate, double elapsed)
{
    if (!(elapsed >= 0.0) || !std::isfinite(elapsed))
    {
        throw std::invalid_argument("elapsed time must be finite and >= 0");
    }
    double const x = elapsed * rate;
    if (x > 0.5)
    {
        std::ostringstream os;
        os << "single-collision factor outside its first-order window: T F = "
           << x;
        emit_diagnostic(os.str());
    }
    return 1.0 - x;
}

AngularIdentity angular_identity_check(double theta, MCSpec const& spec)
{
    if (!(theta >= 0.0 && theta <= pi))
    {
        throw std::domain_error("scattering angle outside [0, pi]");
    }
    Vec3 const d{-std::sin(theta), 0.0, 1.0 - std::cos(theta)};  // n1 - n2
    Estimate lhs = mc_integrate(
        [&](Rng& rng) {
            double const proj = dot(d, uniform_unit_vector(rng));
            return proj * proj;
        },
        spec);
    double const s = std::sin(0.5 * theta);
    return {lhs, 4.0 / 3.0 * s * s};
}

DecoherenceResult compute_decoherence(ScatteringModel const& model,
                                      BathParams const& bath,
                                      std::span<double const> separations,
                                      PhysicalConstants const& consts,
                                      QuadSpec const& spec)
{
    DecoherenceResult result;
    result.lambda = lambda_quadrature(model, bath, consts, spec).value;
    result.f_infinity = f_infinity(model, bath, consts, spec).value;
    result.curve.resize(separations.size());
    for_each_block(separations.size(), [&](std::size_t i) {
        Estimate const e = f_of_r_reduced(model, bath, separations[i], consts,
                                          spec);
        result.curve[i] = {separations[i], e.value, e.error_estimate};
    });
    return result;
}

}  // namespace colldec
