#include "colldec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "colldec/decoherence.hpp"
#include "colldec/errors.hpp"
#include "colldec/parallel.hpp"
#include "colldec/random.hpp"
#include "colldec/thermal.hpp"

namespace colldec
{

//---------------------------------------------------------------------------//
// Moments
//---------------------------------------------------------------------------//
namespace
{
struct MomentRates
{
    double xx, xp, pp;
};

MomentRates rates(double xp, double pp, double inv_mass, double kick)
{
    return {xp * inv_mass, 2.0 * pp * inv_mass, kick};
}
}  // namespace

std::vector<MomentState> evolve_moments(MomentState const& initial,
                                        double lambda, double mass,
                                        double t_end, double dt,
                                        PhysicalConstants const& consts)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
    {
        throw ConfigurationError("moment integration step must be positive");
    }
    if (!(mass > 0.0) || !(lambda >= 0.0) || !(t_end >= initial.t))
    {
        throw ConfigurationError(
            "moment integration needs M > 0, Lambda >= 0, t_end >= t0");
    }
    consts.validate();

    double const inv_m = 1.0 / mass;
    double const kick = 2.0 * consts.hbar * consts.hbar * lambda;
    std::vector<MomentState> out{initial};
    MomentState s = initial;
    auto const n_steps = static_cast<std::size_t>(
        std::ceil((t_end - initial.t) / dt - 1e-9));
    for (std::size_t i = 0; i < n_steps; ++i)
    {
        double const t_next = (i + 1 == n_steps)
                                  ? t_end
                                  : initial.t + static_cast<double>(i + 1) * dt;
        double const h = t_next - s.t;
        auto const k1 = rates(s.xp, s.pp, inv_m, kick);
        auto const k2 = rates(s.xp + 0.5 * h * k1.xp, s.pp + 0.5 * h * k1.pp,
                              inv_m, kick);
        auto const k3 = rates(s.xp + 0.5 * h * k2.xp, s.pp + 0.5 * h * k2.pp,
                              inv_m, kick);
        auto const k4 = rates(s.xp + h * k3.xp, s.pp + h * k3.pp, inv_m, kick);
        s.xx += h / 6.0 * (k1.xx + 2.0 * k2.xx + 2.0 * k3.xx + k4.xx);
        s.xp += h / 6.0 * (k1.xp + 2.0 * k2.xp + 2.0 * k3.xp + k4.xp);
        s.pp += h / 6.0 * (k1.pp + 2.0 * k2.pp + 2.0 * k3.pp + k4.pp);
        s.t = t_next;
        out.push_back(s);
    }
    return out;
}

double msd_quantum(double lambda, double mass, double t,
                   PhysicalConstants const& consts)
{
    if (!(t >= 0.0))
    {
        throw std::invalid_argument("time must be non-negative");
    }
    return 2.0 * lambda * consts.hbar * consts.hbar * t * t * t
           / (3.0 * mass * mass);
}

double viscosity_hard_sphere(BathParams const& bath,
                             ParticleParams const& particle,
                             PhysicalConstants const& consts)
{
    double const a = particle.radius();
    return 8.0 / 3.0 * bath.density() * a * a
           * std::sqrt(2.0 * std::numbers::pi * bath.mass() * bath.kT(consts));
}

double msd_classical(BathParams const& bath, ParticleParams const& particle,
                     double t, PhysicalConstants const& consts)
{
    if (!(t >= 0.0))
    {
        throw std::invalid_argument("time must be non-negative");
    }
    double const xi = viscosity_hard_sphere(bath, particle, consts);
    double const M = particle.mass();
    return 2.0 * bath.kT(consts) * xi * t * t * t / (3.0 * M * M);
}

CrossCheck cross_check_constant(PhysicalConstants const& consts,
                                BathParams const& bath,
                                ParticleParams const& particle, double t)
{
    if (!(t > 0.0) || !(bath.density() > 0.0))
    {
        throw std::invalid_argument(
            "cross-check needs t > 0 and a non-empty bath");
    }
    double const M = particle.mass();
    double const a = particle.radius();
    double const kT = bath.kT(consts);
    double const scale = std::pow(kT, 1.5) * bath.density()
                         * std::sqrt(bath.mass()) * a * a * t * t * t
                         / (M * M);

    double const lambda = lambda_hard_sphere(bath, particle, consts);
    double const quantum = msd_quantum(lambda, M, t, consts);
    double const classical = msd_classical(bath, particle, t, consts);
    return {quantum / scale, classical / scale};
}

double brownian_constant_closed_form()
{
    return 16.0 / 9.0 * std::sqrt(2.0 * std::numbers::pi);
}

//---------------------------------------------------------------------------//
// Langevin
//---------------------------------------------------------------------------//
void LangevinSpec::validate(double mass) const
{
    if (!(dt > 0.0) || !std::isfinite(dt) || !(t_end > 0.0)
        || !std::isfinite(t_end))
    {
        throw ConfigurationError("Langevin needs dt > 0 and t_end > 0");
    }
    if (!(xi >= 0.0) || !std::isfinite(xi))
    {
        throw ConfigurationError("drag coefficient must be non-negative");
    }
    if (n_traj < 2 || n_records < 1)
    {
        throw ConfigurationError(
            "Langevin needs at least 2 trajectories and 1 record");
    }
    if (xi > 0.0 && dt > mass / (100.0 * xi))
    {
        throw ConfigurationError("Langevin step dt = " + std::to_string(dt)
                                 + " exceeds M / (100 xi) = "
                                 + std::to_string(mass / (100.0 * xi)));
    }
    if (t_end / dt > 1e9)
    {
        throw ConfigurationError("Langevin run needs more than 1e9 steps");
    }
}

LangevinResult langevin_msd(BathParams const& bath,
                            ParticleParams const& particle,
                            LangevinSpec const& spec,
                            PhysicalConstants const& consts)
{
    double const M = particle.mass();
    spec.validate(M);

    auto const n_steps = static_cast<std::size_t>(std::llround(spec.t_end
                                                               / spec.dt));
    if (n_steps < spec.n_records)
    {
        throw ConfigurationError("Langevin run has fewer steps than records");
    }
    std::vector<std::size_t> record_step(spec.n_records);
    for (std::size_t k = 0; k < spec.n_records; ++k)
    {
        record_step[k] = static_cast<std::size_t>(std::llround(
            static_cast<double>(n_steps) * static_cast<double>(k + 1)
            / static_cast<double>(spec.n_records)));
    }

    double const damping = spec.xi / M * spec.dt;
    double const noise = std::sqrt(2.0 * spec.xi * bath.kT(consts) * spec.dt)
                         / M;

    // Per block, per record: sum and sum of squares of x^2 and v^2
    struct Sums
    {
        std::vector<double> x2, x4, v2, v4;
    };
    std::size_t const n_blocks = (spec.n_traj + kLangevinBlockSize - 1)
                                 / kLangevinBlockSize;
    std::vector<Sums> partial(n_blocks);

    for_each_block(n_blocks, [&](std::size_t block) {
        Rng rng = make_stream_rng(spec.seed, block);
        std::size_t const begin = block * kLangevinBlockSize;
        std::size_t const end = std::min(spec.n_traj,
                                         begin + kLangevinBlockSize);
        auto& s = partial[block];
        s.x2.assign(spec.n_records, 0.0);
        s.x4 = s.v2 = s.v4 = s.x2;
        for (std::size_t traj = begin; traj < end; ++traj)
        {
            double x = 0.0;
            double v = 0.0;
            std::size_t rec = 0;
            std::array<double, 2> gauss{};
            for (std::size_t step = 1; step <= n_steps; ++step)
            {
                if (step % 2 == 1)
                {
                    gauss = standard_normal_pair(rng);
                }
                double const dw = gauss[(step - 1) % 2];
                x += v * spec.dt;
                v += -damping * v + noise * dw;
                if (step == record_step[rec])
                {
                    double const x2 = x * x;
                    double const v2 = v * v;
                    s.x2[rec] += x2;
                    s.x4[rec] += x2 * x2;
                    s.v2[rec] += v2;
                    s.v4[rec] += v2 * v2;
                    if (++rec == spec.n_records)
                    {
                        break;
                    }
                }
            }
        }
    });

    LangevinResult out;
    double const n = static_cast<double>(spec.n_traj);
    auto mean_and_error = [n](double sum, double sum_sq) {
        double const mean = sum / n;
        double const var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
        return std::pair{mean, std::sqrt(var / n)};
    };
    for (std::size_t k = 0; k < spec.n_records; ++k)
    {
        double x2 = 0, x4 = 0, v2 = 0, v4 = 0;
        for (auto const& s : partial)
        {
            x2 += s.x2[k];
            x4 += s.x4[k];
            v2 += s.v2[k];
            v4 += s.v4[k];
        }
        auto const [mx, ex] = mean_and_error(x2, x4);
        auto const [mv, ev] = mean_and_error(v2, v4);
        out.times.push_back(static_cast<double>(record_step[k]) * spec.dt);
        out.msd.push_back(mx);
        out.msd_error.push_back(ex);
        out.v2.push_back(mv);
        out.v2_error.push_back(ev);
    }
    return out;
}

}  // namespace colldec
