#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "colldec/decoherence.hpp"
#include "colldec/dynamics.hpp"
#include "colldec/errors.hpp"
#include "colldec/grid.hpp"
#include "colldec/thermal.hpp"
#include "csv.hpp"

#ifndef COLLDEC_VERSION
#    define COLLDEC_VERSION "unknown"
#endif

namespace colldec::cli
{
namespace
{
void header(CsvWriter& csv, Scenario const& s, std::ostream& os,
            char const* command)
{
    csv.comment(std::string("colldec ") + version());
    csv.comment(std::string("command: ") + command);
    write_scenario_header(os, s);
}

// Decoherence parameter: closed form for hard spheres, quadrature otherwise
double model_lambda(Scenario const& s)
{
    if (s.model.is_hard_sphere())
    {
        return lambda_hard_sphere(s.bath, s.particle, s.constants);
    }
    return lambda_quadrature(s.model, s.bath, s.constants, s.quad).value;
}

void check_geometric_limit(Scenario const& s)
{
    if (s.model.is_hard_sphere())
    {
        geometric_limit_quality(s.bath, s.particle, s.constants);
    }
}

std::string fmt(double v)
{
    return format_number(v);
}

char const* lambda_unit(Units u)
{
    return u == Units::si ? " 1/(m^2 s)" : "";
}

char const* rate_unit(Units u)
{
    return u == Units::si ? " 1/s" : "";
}
}  // namespace

char const* version()
{
    return COLLDEC_VERSION;
}

//---------------------------------------------------------------------------//
void run_lambda(Scenario const& s, std::ostream& os)
{
    check_geometric_limit(s);
    auto const quad = lambda_quadrature(s.model, s.bath, s.constants, s.quad);
    char const* unit = lambda_unit(s.units);
    if (s.model.is_hard_sphere())
    {
        double const closed = lambda_hard_sphere(s.bath, s.particle, s.constants);
        os << "lambda closed form:  " << fmt(closed) << unit << '\n';
        os << "lambda quadrature:   " << fmt(quad.value) << unit
           << " (error estimate " << fmt(quad.error_estimate) << ")\n";
        os << "relative difference: "
           << fmt(std::abs(quad.value - closed) / std::abs(closed)) << '\n';
    }
    else
    {
        os << "lambda quadrature:   " << fmt(quad.value) << unit
           << " (error estimate " << fmt(quad.error_estimate) << ")\n";
    }
}

void run_finf(Scenario const& s, std::ostream& os)
{
    check_geometric_limit(s);
    auto const quad = f_infinity(s.model, s.bath, s.constants, s.quad);
    char const* unit = rate_unit(s.units);
    os << "F(inf) = n<v sigma>: " << fmt(quad.value) << unit
       << " (error estimate " << fmt(quad.error_estimate) << ")\n";
    if (s.model.is_hard_sphere())
    {
        double const a = s.particle.radius();
        double const closed = s.bath.density()
                              * thermal_average_speed(s.bath, s.constants)
                              * std::numbers::pi * a * a;
        os << "n<v> pi a^2:         " << fmt(closed) << unit << '\n';
    }
}

void run_crosscheck(Scenario const& s, std::ostream& os)
{
    auto const cc = cross_check_constant(s.constants, s.bath, s.particle);
    double const diff = cc.c_quantum - cc.c_classical;
    os << "C quantum:            " << fmt(cc.c_quantum) << '\n';
    os << "C classical:          " << fmt(cc.c_classical) << '\n';
    os << "difference:           " << fmt(diff) << '\n';
    os << "relative difference:  " << fmt(std::abs(diff) / cc.c_classical) << '\n';
    os << "uncorrected (x 2 pi): " << fmt(2.0 * std::numbers::pi * cc.c_quantum)
       << '\n';
}

//---------------------------------------------------------------------------//
void run_fcurve(Scenario const& s, FCurveOptions const& opt, std::ostream& os)
{
    if (opt.points < 1)
    {
        throw ConfigurationError("fcurve needs at least one point");
    }
    if (!(opt.r_min >= 0.0) || !(opt.r_max >= opt.r_min))
    {
        throw ConfigurationError("fcurve needs 0 <= r-min <= r-max");
    }
    if (opt.log && !(opt.r_min > 0.0))
    {
        throw ConfigurationError("fcurve --log needs r-min > 0");
    }
    check_geometric_limit(s);

    std::vector<double> r(opt.points);
    for (std::size_t i = 0; i < opt.points; ++i)
    {
        double const f = opt.points == 1 ? 0.0
                                         : static_cast<double>(i)
                                               / static_cast<double>(opt.points - 1);
        r[i] = opt.log ? opt.r_min * std::pow(opt.r_max / opt.r_min, f)
                       : opt.r_min + (opt.r_max - opt.r_min) * f;
    }
    r.back() = opt.points == 1 ? opt.r_min : opt.r_max;

    CsvWriter csv(os);
    header(csv, s, os, "fcurve");
    csv.comment("r_min", opt.r_min);
    csv.comment("r_max", opt.r_max);
    csv.comment("points: " + std::to_string(opt.points));
    csv.comment(std::string("spacing: ") + (opt.log ? "log" : "linear"));
    if (opt.monte_carlo)
    {
        csv.comment("monte carlo separation along z");
        csv.columns({"R", "F", "F_error", "F_mc", "F_mc_error", "F_mc_imag",
                     "F_mc_imag_error"});
    }
    else
    {
        csv.columns({"R", "F", "F_error"});
    }

    for (double ri : r)
    {
        auto const f = f_of_r_reduced(s.model, s.bath, ri, s.constants, s.quad);
        if (opt.monte_carlo)
        {
            auto const mc = f_of_r_full(s.model, s.bath, {0.0, 0.0, ri},
                                        s.constants, s.mc);
            csv.row({ri, f.value, f.error_estimate, mc.real.value,
                     mc.real.error_estimate, mc.imag.value,
                     mc.imag.error_estimate});
        }
        else
        {
            csv.row({ri, f.value, f.error_estimate});
        }
    }
}

void run_msd(Scenario const& s, MsdOptions const& opt, std::ostream& os)
{
    if (opt.points < 1)
    {
        throw ConfigurationError("msd needs at least one point");
    }
    if (!(opt.t_max > 0.0))
    {
        throw ConfigurationError("msd needs t-max > 0");
    }
    double const lambda = model_lambda(s);
    double const mass = s.particle.mass();
    double const dt = opt.t_max / static_cast<double>(opt.points);
    // RK4 is exact for the cubic solution, so one step per output point
    auto const traj = evolve_moments({}, lambda, mass, opt.t_max, dt, s.constants);

    CsvWriter csv(os);
    header(csv, s, os, "msd");
    csv.comment("t_max", opt.t_max);
    csv.comment("points: " + std::to_string(opt.points));
    csv.comment("lambda", lambda);
    bool const classical = s.model.is_hard_sphere();
    if (classical)
    {
        csv.columns({"t", "msd_quantum", "msd_classical"});
    }
    else
    {
        csv.columns({"t", "msd_quantum"});
    }
    for (auto const& st : traj)
    {
        if (classical)
        {
            csv.row({st.t, st.xx, msd_classical(s.bath, s.particle, st.t, s.constants)});
        }
        else
        {
            csv.row({st.t, st.xx});
        }
    }
}

void run_evolve(Scenario const& s, EvolveOptions const& opt, std::ostream& os)
{
    if (opt.every < 1)
    {
        throw ConfigurationError("evolve needs --every >= 1");
    }
    double const sigma = opt.sigma.value_or(opt.box_l / 16.0);
    double const lambda = model_lambda(s);
    double const mass = s.particle.mass();
    auto const initial = GridState::gaussian(opt.grid_n, opt.box_l, sigma);
    MomentState const m0{initial.second_moment(), 0.0,
                         initial.momentum_second_moment(s.constants), 0.0};

    std::vector<std::vector<double>> rows;
    auto record = [&](GridState const& g) {
        rows.push_back({g.time(), g.trace(), g.second_moment(), g.purity()});
    };
    record(initial);
    std::size_t step = 0;
    evolve_grid(initial, lambda, mass, opt.dt, opt.steps, s.constants,
                [&](GridState const& g) {
                    if (++step % opt.every == 0 || step == opt.steps)
                    {
                        record(g);
                    }
                });

    CsvWriter csv(os);
    header(csv, s, os, "evolve");
    csv.comment("grid_n: " + std::to_string(opt.grid_n));
    csv.comment("box_l", opt.box_l);
    csv.comment("dt", opt.dt);
    csv.comment("steps: " + std::to_string(opt.steps));
    csv.comment("sigma", sigma);
    csv.comment("lambda", lambda);
    csv.columns({"t", "trace", "x2", "purity", "x2_moments"});
    for (auto& row : rows)
    {
        double const t = row[0];
        double x2_ref = m0.xx;
        if (t > 0.0)
        {
            x2_ref = evolve_moments(m0, lambda, mass, t, t, s.constants).back().xx;
        }
        row.push_back(x2_ref);
        csv.row(row);
    }
}

void run_langevin(Scenario const& s, LangevinOptions const& opt,
                  std::ostream& os)
{
    LangevinSpec spec;
    spec.xi = opt.xi.value_or(viscosity_hard_sphere(s.bath, s.particle, s.constants));
    spec.n_traj = opt.traj;
    spec.dt = opt.dt;
    spec.t_end = opt.t_end;
    spec.n_records = opt.points;
    spec.seed = s.mc.seed;
    auto const res = langevin_msd(s.bath, s.particle, spec, s.constants);

    double const kT = s.bath.kT(s.constants);
    double const mass = s.particle.mass();

    CsvWriter csv(os);
    header(csv, s, os, "langevin");
    csv.comment("trajectories: " + std::to_string(opt.traj));
    csv.comment("dt", opt.dt);
    csv.comment("t_end", opt.t_end);
    csv.comment("points: " + std::to_string(opt.points));
    csv.comment("xi", spec.xi);
    csv.columns({"t", "msd", "msd_error", "msd_short_time", "v2", "v2_error"});
    for (std::size_t k = 0; k < res.times.size(); ++k)
    {
        double const t = res.times[k];
        double const short_time = 2.0 * kT * spec.xi * t * t * t / (3.0 * mass * mass);
        csv.row({t, res.msd[k], res.msd_error[k], short_time, res.v2[k],
                 res.v2_error[k]});
    }
}

}  // namespace colldec::cli
