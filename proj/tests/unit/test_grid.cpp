#include <doctest.h>

#include <cmath>
#include <limits>

#include "colldec/dynamics.hpp"
#include "colldec/errors.hpp"
#include "colldec/grid.hpp"
#include "oracles.hpp"

using namespace colldec;
using namespace colldec::testing;

namespace
{
auto const natural = PhysicalConstants::natural();
double const infinite_mass = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("Gaussian initial state")
{
    auto const g = GridState::gaussian(128, 20.0, 1.0);
    CHECK(std::abs(g.trace() - 1.0) < 1e-14);
    CHECK(std::abs(g.purity() - 1.0) < 1e-12);
    CHECK(g.hermiticity_error() == 0.0);
    CHECK(g.second_moment() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.momentum_second_moment(natural) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(g.edge_density() < 1e-10);
    CHECK_THROWS_AS(GridState(7, 1.0), ConfigurationError);
    CHECK_THROWS_AS(GridState(8, 0.0), ConfigurationError);
}

TEST_CASE("decoherence alone damps coherences exactly")
{
    double const lambda = 1.0;
    double const dt = 0.01;
    std::size_t const steps = 100;
    auto const g0 = GridState::gaussian(128, 16.0, 1.0);
    auto const g = evolve_grid(g0, lambda, infinite_mass, dt, steps, natural);
    double const t = g.time();
    CHECK(t == doctest::Approx(1.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        for (std::size_t j = 0; j < g.size(); ++j)
        {
            if (std::abs(g0(i, j)) < 1e-200)
            {
                continue;
            }
            double const d = g.x(i) - g.x(j);
            double const ratio = g(i, j).real() / g0(i, j).real();
            worst = std::max(worst, std::abs(ratio - std::exp(-lambda * d * d * t)));
        }
    }
    CHECK(worst <= 1e-10);
    CHECK(std::abs(g.trace() - g0.trace()) < 1e-15);
}

TEST_CASE("full evolution tracks the moment equations")
{
    double const lambda = 0.5;
    double const M = 1.0;
    double const dt = 0.01;
    std::size_t const steps = 150;
    auto const g0 = GridState::gaussian(512, 48.0, 1.0);
    MomentState const s0{g0.second_moment(), 0.0, g0.momentum_second_moment(natural), 0.0};

    double max_trace_drift = 0.0;
    double max_herm = 0.0;
    double min_diag = 0.0;
    auto const g = evolve_grid(g0, lambda, M, dt, steps, natural, [&](GridState const& s) {
        max_trace_drift = std::max(max_trace_drift, std::abs(s.trace() - 1.0));
        max_herm = std::max(max_herm, s.hermiticity_error());
        min_diag = std::min(min_diag, s.min_diagonal());
    });
    auto const m = evolve_moments(s0, lambda, M, g.time(), dt, natural).back();
    CHECK(rel_err(g.second_moment(), m.xx) < 0.01);
    CHECK(rel_err(g.momentum_second_moment(natural), m.pp) < 0.01);
    CHECK(max_trace_drift < 1e-6);
    CHECK(max_herm < 1e-12);
    CHECK(min_diag > -1e-12);
    CHECK(g.purity() < 1.0);
}

TEST_CASE("unresolved configurations are rejected")
{
    auto const coarse = GridState::gaussian(32, 16.0, 1.0);  // dx = 0.5
    CHECK_THROWS_AS(evolve_grid(coarse, 10.0, 1.0, 0.01, 100, natural), ConfigurationError);

    auto const cramped = GridState::gaussian(128, 6.0, 1.0);
    CHECK_THROWS_AS(evolve_grid(cramped, 0.1, 1.0, 0.01, 10, natural), ConfigurationError);

    // fine initially but the packet outgrows the box
    auto const g = GridState::gaussian(256, 24.0, 1.0);
    CHECK_NOTHROW(evolve_grid(g, 0.5, 1.0, 0.01, 10, natural));
    CHECK_THROWS_AS(evolve_grid(g, 0.5, 1.0, 0.1, 100, natural), ConfigurationError);

    CHECK_THROWS_AS(evolve_grid(g, 0.5, 1.0, 0.0, 10, natural), ConfigurationError);
    CHECK_THROWS_AS(evolve_grid(g, -0.5, 1.0, 0.1, 10, natural), ConfigurationError);
}
