#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>

#include "scenario.hpp"

namespace colldec::cli
{

struct FCurveOptions
{
    double r_min = 0.0;
    double r_max = 1.0;
    std::size_t points = 11;
    bool log = false;
    bool monte_carlo = false;  //!< add the sampled momentum-vector form
};

struct MsdOptions
{
    double t_max = 1.0;
    std::size_t points = 11;
};

struct EvolveOptions
{
    std::size_t grid_n = 256;
    double box_l = 1.0;
    double dt = 1e-3;
    std::size_t steps = 100;
    std::optional<double> sigma;  //!< initial width, default box_l / 16
    std::size_t every = 1;  //!< write every n-th step
};

struct LangevinOptions
{
    std::size_t traj = 100'000;
    double dt = 1e-3;
    double t_end = 1.0;
    std::size_t points = 5;
    std::optional<double> xi;  //!< default: hard-sphere drag
};

char const* version();

// Summaries (human-readable)
void run_lambda(Scenario const& s, std::ostream& os);
void run_finf(Scenario const& s, std::ostream& os);
void run_crosscheck(Scenario const& s, std::ostream& os);

// CSV
void run_fcurve(Scenario const& s, FCurveOptions const& opt, std::ostream& os);
void run_msd(Scenario const& s, MsdOptions const& opt, std::ostream& os);
void run_evolve(Scenario const& s, EvolveOptions const& opt, std::ostream& os);
void run_langevin(Scenario const& s, LangevinOptions const& opt,
                  std::ostream& os);

}  // namespace colldec::cli
