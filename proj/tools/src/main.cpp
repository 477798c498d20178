#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "colldec/errors.hpp"
#include "commands.hpp"
#include "scenario.hpp"

namespace
{
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;

CLI::Range const kCount(1.0, 1e12);

using namespace colldec::cli;

struct Output
{
    std::string path;

    template<class F>
    void write(F&& fn) const
    {
        if (path.empty() || path == "-")
        {
            fn(std::cout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
        {
            throw colldec::ConfigurationError("cannot write '" + path + "'");
        }
        fn(out);
    }
};

CLI::App* add_command(CLI::App& app, char const* name, char const* help,
                      std::string& scenario)
{
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", scenario, "JSON scenario file")->required();
    return sub;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Collisional decoherence of a heavy particle in a thermal gas"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    std::string scenario_path;
    Output output;
    std::function<void(Scenario const&)> action;

    auto* lambda = add_command(app, "lambda", "decoherence parameter Lambda",
                               scenario_path);
    lambda->callback([&] {
        action = [](Scenario const& s) { run_lambda(s, std::cout); };
    });

    auto* finf = add_command(app, "finf", "large-separation rate n<v sigma>",
                             scenario_path);
    finf->callback([&] {
        action = [](Scenario const& s) { run_finf(s, std::cout); };
    });

    auto* cross = add_command(app, "crosscheck",
                              "quantum vs classical t^3 coefficient", scenario_path);
    cross->callback([&] {
        action = [](Scenario const& s) { run_crosscheck(s, std::cout); };
    });

    FCurveOptions fopt;
    auto* fcurve = add_command(app, "fcurve", "CSV of F(R)", scenario_path);
    fcurve->add_option("--r-min", fopt.r_min)->required()->check(CLI::NonNegativeNumber);
    fcurve->add_option("--r-max", fopt.r_max)->required()->check(CLI::NonNegativeNumber);
    fcurve->add_option("--points", fopt.points)->required()->check(kCount);
    fcurve->add_flag("--log", fopt.log, "logarithmic spacing");
    fcurve->add_flag("--mc", fopt.monte_carlo,
                     "add Monte Carlo estimate of the momentum-vector form");
    fcurve->add_option("-o,--output", output.path, "CSV file (default stdout)");
    fcurve->callback([&] {
        action = [&](Scenario const& s) {
            output.write([&](std::ostream& os) { run_fcurve(s, fopt, os); });
        };
    });

    MsdOptions mopt;
    auto* msd = add_command(app, "msd", "CSV of <R^2>(t), quantum and classical",
                            scenario_path);
    msd->add_option("--t-max", mopt.t_max)->required()->check(CLI::PositiveNumber);
    msd->add_option("--points", mopt.points)->required()->check(kCount);
    msd->add_option("-o,--output", output.path, "CSV file (default stdout)");
    msd->callback([&] {
        action = [&](Scenario const& s) {
            output.write([&](std::ostream& os) { run_msd(s, mopt, os); });
        };
    });

    EvolveOptions eopt;
    double sigma = 0.0;
    auto* evolve = add_command(app, "evolve", "density-matrix grid evolution",
                               scenario_path);
    evolve->add_option("--grid-n", eopt.grid_n)->required()->check(kCount);
    evolve->add_option("--box-l", eopt.box_l)->required()->check(CLI::PositiveNumber);
    evolve->add_option("--dt", eopt.dt)->required()->check(CLI::PositiveNumber);
    evolve->add_option("--steps", eopt.steps)->required()->check(kCount);
    auto* sigma_opt = evolve->add_option("--sigma", sigma, "initial packet width")
                          ->check(CLI::PositiveNumber);
    evolve->add_option("--every", eopt.every, "write every n-th step")
        ->check(kCount);
    evolve->add_option("-o,--output", output.path, "CSV file (default stdout)");
    evolve->callback([&] {
        if (sigma_opt->count() > 0)
        {
            eopt.sigma = sigma;
        }
        action = [&](Scenario const& s) {
            output.write([&](std::ostream& os) { run_evolve(s, eopt, os); });
        };
    });

    LangevinOptions lopt;
    double xi = 0.0;
    auto* langevin = add_command(app, "langevin", "classical Langevin ensemble MSD",
                                 scenario_path);
    langevin->add_option("--traj", lopt.traj)->required()->check(CLI::Range(2, 1 << 30));
    langevin->add_option("--dt", lopt.dt)->required()->check(CLI::PositiveNumber);
    langevin->add_option("--t-end", lopt.t_end)->required()->check(CLI::PositiveNumber);
    langevin->add_option("--points", lopt.points, "number of output times")
        ->check(kCount);
    auto* xi_opt = langevin->add_option("--xi", xi, "drag coefficient (default: hard sphere)")
                       ->check(CLI::NonNegativeNumber);
    langevin->add_option("-o,--output", output.path, "CSV file (default stdout)");
    langevin->callback([&] {
        if (xi_opt->count() > 0)
        {
            lopt.xi = xi;
        }
        action = [&](Scenario const& s) {
            output.write([&](std::ostream& os) { run_langevin(s, lopt, os); });
        };
    });

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        Scenario const s = load_scenario(scenario_path);
        action(s);
    }
    catch (colldec::NonConvergenceError const& e)
    {
        auto const& best = e.best_estimate();
        std::cerr << "colldec: error: " << e.what() << '\n'
                  << "colldec: best estimate " << best.value << " +- "
                  << best.error_estimate << " after " << best.evaluations
                  << " evaluations\n";
        return kExitNonConvergence;
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "colldec: error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (std::domain_error const& e)
    {
        std::cerr << "colldec: error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
