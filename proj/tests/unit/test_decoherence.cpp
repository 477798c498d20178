#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "colldec/decoherence.hpp"
#include "colldec/diagnostics.hpp"
#include "colldec/dynamics.hpp"
#include "colldec/errors.hpp"
#include "colldec/thermal.hpp"
#include "oracles.hpp"

using namespace colldec;
using namespace colldec::testing;
using std::numbers::pi;

namespace
{
auto const natural = PhysicalConstants::natural();
BathParams const unit_bath{1.0, 1.0, 1.0};
auto const unit_sphere = ScatteringModel::hard_sphere(1.0);

double const q_th = std::numbers::sqrt2;  // sqrt(2 m kT), natural units
}  // namespace

TEST_CASE("one_minus_sinc is smooth across the series switch")
{
    for (double x : {1e-8, 1e-3, 0.05, 0.0999999, 0.1, 0.1000001, 0.5, 3.0})
    {
        long double const lx = x;
        long double const ref = 1.0L - std::sin(lx) / lx;
        CHECK(std::abs(one_minus_sinc(x) - static_cast<double>(ref))
              <= 1e-15 * std::max(1.0, static_cast<double>(ref)) + 1e-13 * static_cast<double>(ref));
    }
    CHECK(one_minus_sinc(0.0) == 0.0);
    CHECK(one_minus_sinc(-0.3) == one_minus_sinc(0.3));
}

TEST_CASE("F vanishes at zero separation")
{
    CHECK(f_of_r_reduced(unit_sphere, unit_bath, 0.0, natural).value == 0.0);
    auto const tab = ScatteringModel::tabulated({0.0, 20.0}, {0.0, pi},
                                                {0.3, 0.1, 0.5, 0.2});
    CHECK(f_of_r_reduced(tab, unit_bath, 0.0, natural).value == 0.0);
    CHECK_THROWS_AS(f_of_r_reduced(unit_sphere, unit_bath, -1.0, natural),
                    std::invalid_argument);
}

TEST_CASE("hard-sphere F(R) against the closed-form angular oracle")
{
    // Frozen from 30-digit quadrature of
    // pi \int nu(q) q (1 - sinc^2(q R)) dq.
    std::pair<double, double> const frozen[] = {
        {0.2, 0.25900986278172767}, {0.5, 1.3797561928807549},
        {1.0, 3.4090443461296939},  {2.0, 4.6743650490413202},
        {5.0, 4.9626068083784207},  {50.0, 5.0127551734594620}};
    for (auto const [r, truth] : frozen)
    {
        auto const f = f_of_r_reduced(unit_sphere, unit_bath, r, natural);
        CHECK(rel_err(f.value, truth) < 1e-8);
        CHECK(rel_err(hard_sphere_f_of_r(1.0, 1.0, r), truth) < 1e-8);
        CHECK(f.error_estimate < 1e-6 * truth);
    }
}

TEST_CASE("small-separation law F = Lambda R^2")
{
    double const lambda = lambda_hard_sphere(unit_bath, {1.0, 1.0}, natural);
    double r = 0.05 / (2.0 * q_th);
    double previous = 0.0;
    for (int i = 0; i < 3; ++i, r *= 0.5)
    {
        double const ratio
            = f_of_r_reduced(unit_sphere, unit_bath, r, natural).value
              / (lambda * r * r);
        CHECK(ratio > 0.99);
        CHECK(ratio < 1.01);
        double const deviation = 1.0 - ratio;
        if (i == 0)
        {
            // frozen: 1 - F/(Lambda R^2) = 2.4996e-4 at 2 q_th R = 0.05
            CHECK(rel_err(deviation, 2.4995536334254947e-4) < 1e-4);
        }
        else
        {
            CHECK(previous / deviation == doctest::Approx(4.0).epsilon(1e-3));
        }
        previous = deviation;
    }
}

TEST_CASE("large-separation limit")
{
    double const finf = f_infinity(unit_sphere, unit_bath, natural).value;
    CHECK(rel_err(finf, kFInfinityHardSphere) <= 1e-9);
    double const r = 100.0 / (2.0 * q_th);
    double const f = f_of_r_reduced(unit_sphere, unit_bath, r, natural).value;
    CHECK(rel_err(f, finf) < 0.02);
}

TEST_CASE("0 <= F <= 2 F_inf for all separations")
{
    auto const tab = ScatteringModel::tabulated(
        {0.0, 5.0, 20.0}, {0.0, 1.0, pi}, {0.5, 0.2, 0.05, 0.4, 0.3, 0.1, 0.2, 0.2, 0.2});
    PropertyGen gen(17);
    for (auto const* model : {&unit_sphere, &tab})
    {
        double const finf = f_infinity(*model, unit_bath, natural).value;
        for (int i = 0; i < 12; ++i)
        {
            double const r = gen.log_uniform(1e-3, 30.0);
            auto const f = f_of_r_reduced(*model, unit_bath, r, natural);
            CHECK(f.value >= -f.error_estimate);
            CHECK(f.value <= 2.0 * finf + f.error_estimate);
        }
    }
}

TEST_CASE("Monte-Carlo momentum-vector form")
{
    MCSpec const spec{200000, 9};
    auto const zero = f_of_r_full(unit_sphere, unit_bath, {0, 0, 0}, natural,
                                  spec);
    CHECK(zero.real.value == 0.0);
    CHECK(zero.imag.value == 0.0);

    Vec3 const r{0.6, -0.48, 0.64};  // |R| = 1
    auto const mc = f_of_r_full(unit_sphere, unit_bath, r, natural, spec);
    double const reduced = f_of_r_reduced(unit_sphere, unit_bath, 1.0, natural).value;
    CHECK(std::abs(mc.real.value - reduced) < 3.0 * mc.real.error_estimate);
    CHECK(std::abs(mc.imag.value) < 3.0 * mc.imag.error_estimate);

    auto const again = f_of_r_full(unit_sphere, unit_bath, r, natural, spec);
    CHECK(again.real.value == mc.real.value);
}

TEST_CASE("Lambda from quadrature equals the hard-sphere closed form")
{
    double const closed = lambda_hard_sphere(unit_bath, {1.0, 1.0}, natural);
    CHECK(rel_err(closed, kLambdaHardSphere) < 1e-14);
    auto const quad = lambda_quadrature(unit_sphere, unit_bath, natural);
    CHECK(rel_err(quad.value, closed) <= 1e-8);

    // three (m, T, a, n) points in SI
    struct Point
    {
        BathParams bath;
        double radius;
    };
    Point const points[] = {{{4.65e-26, 300.0, 2.5e25}, 1e-7},
                            {{6.6e-27, 4.0, 1e20}, 5e-9},
                            {{1.7e-27, 1e4, 3e16}, 2e-6}};
    for (auto const& [bath, a] : points)
    {
        double const c = lambda_hard_sphere(bath, {1e-15, a});
        double const q = lambda_quadrature(ScatteringModel::hard_sphere(a), bath).value;
        CHECK(rel_err(q, c) <= 1e-8);
    }
}

TEST_CASE("Lambda scaling and limits")
{
    double const base = lambda_hard_sphere(unit_bath, {1.0, 1.0}, natural);
    CHECK(rel_err(lambda_hard_sphere(unit_bath, {1.0, 2.0}, natural), 4 * base) < 1e-14);
    CHECK(rel_err(lambda_quadrature(unit_sphere, unit_bath.with_density(2.0), natural).value,
                  2 * lambda_quadrature(unit_sphere, unit_bath, natural).value)
          < 1e-14);
    // Lambda ~ n a^2 m^(1/2) (kT)^(3/2) / hbar^2
    CHECK(rel_err(lambda_hard_sphere({4.0, 1.0, 1.0}, {1.0, 1.0}, natural), 2 * base) < 1e-14);
    CHECK(rel_err(lambda_hard_sphere({1.0, 4.0, 1.0}, {1.0, 1.0}, natural), 8 * base) < 1e-14);
    CHECK(rel_err(lambda_hard_sphere(unit_bath, {1.0, 1.0}, {2.0, 1.0}), 0.25 * base) < 1e-14);
    CHECK(rel_err(lambda_quadrature(unit_sphere, {4.0, 1.0, 1.0}, natural).value, 2 * base) < 1e-8);
    CHECK(rel_err(lambda_quadrature(unit_sphere, {1.0, 4.0, 1.0}, natural).value, 8 * base) < 1e-8);

    auto const zero = ScatteringModel::tabulated({0.0, 20.0}, {0.0, pi}, {0, 0, 0, 0});
    CHECK(lambda_quadrature(zero, unit_bath, natural).value == 0.0);

    // inverting the t^3 law recovers Lambda
    double const t = 1.7;
    double const M = 2.3;
    double const msd = msd_quantum(base, M, t, natural);
    CHECK(rel_err(3.0 * M * M * msd / (2.0 * t * t * t), base) < 1e-14);
}

TEST_CASE("F(infinity)")
{
    CHECK(f_infinity(unit_sphere, unit_bath.with_density(0.0), natural).value == 0.0);
    // q-independent sigma factorizes: n <v> sigma
    double const c = 0.3;
    auto const tab = ScatteringModel::tabulated({0.0, 20.0}, {0.0, pi}, {c, c, c, c});
    double const expected = 2.0 * kMeanSpeed * 4.0 * pi * c;
    CHECK(rel_err(f_infinity(tab, unit_bath.with_density(2.0), natural).value, expected)
          < 1e-9);
}

TEST_CASE("tables must cover the thermal momentum range")
{
    auto const narrow = ScatteringModel::tabulated({0.0, 3.0}, {0.0, pi}, {1, 1, 1, 1});
    CHECK_THROWS_AS(lambda_quadrature(narrow, unit_bath, natural), ConfigurationError);
    auto const late = ScatteringModel::tabulated({0.5, 30.0}, {0.0, pi}, {1, 1, 1, 1});
    CHECK_THROWS_AS(f_of_r_reduced(late, unit_bath, 1.0, natural), ConfigurationError);
}

TEST_CASE("tabulated model reproduces the hard sphere")
{
    double const a = 1.3;
    auto const tab = ScatteringModel::tabulated({0.0, 10.0, 20.0}, {0.0, 1.0, 2.0, pi},
                                                std::vector<double>(12, a * a / 4));
    auto const hs = ScatteringModel::hard_sphere(a);
    for (double r : {0.1, 1.0, 4.0})
    {
        CHECK(rel_err(f_of_r_reduced(tab, unit_bath, r, natural).value,
                      f_of_r_reduced(hs, unit_bath, r, natural).value)
              < 1e-9);
    }
    CHECK(rel_err(lambda_quadrature(tab, unit_bath, natural).value,
                  lambda_hard_sphere(unit_bath, {1.0, a}, natural))
          < 1e-9);
}

//---------------------------------------------------------------------------//
TEST_CASE("single-collision factor")
{
    std::vector<std::string> messages;
    auto previous = set_diagnostic_handler(
        [&](std::string_view m) { messages.emplace_back(m); });

    double const f = kFInfinityHardSphere;
    CHECK(eta_single_collision(f, 0.0) == 1.0);
    CHECK(eta_single_collision(f, 0.01) == doctest::Approx(1.0 - 0.01 * f));
    CHECK(messages.empty());
    CHECK(std::abs(eta_single_collision(f, 1.0 / f)) < 1e-15);
    CHECK(messages.size() == 1);
    double const e1 = 1.0 - eta_single_collision(f, 0.02);
    double const e2 = 1.0 - eta_single_collision(f, 0.04);
    CHECK(e2 == doctest::Approx(2.0 * e1));
    CHECK_THROWS_AS(eta_single_collision(f, -1.0), std::invalid_argument);

    set_diagnostic_handler(previous);
}

TEST_CASE("direction average of the momentum-transfer projection")
{
    MCSpec const spec{200000, 3};
    CHECK(angular_identity_check(0.0, spec).rhs == 0.0);
    CHECK(angular_identity_check(0.0, spec).lhs.value == 0.0);
    CHECK(angular_identity_check(pi, spec).rhs == doctest::Approx(4.0 / 3.0));
    auto const mid = angular_identity_check(pi / 2, spec);
    CHECK(mid.rhs == doctest::Approx(2.0 / 3.0));
    CHECK(std::abs(mid.lhs.value - mid.rhs) < 3.0 * mid.lhs.error_estimate);
    CHECK_THROWS_AS(angular_identity_check(4.0, spec), std::domain_error);
}

TEST_CASE("compute_decoherence assembles a consistent result")
{
    std::vector<double> const rs{0.0, 0.1, 1.0, 10.0};
    auto const res = compute_decoherence(unit_sphere, unit_bath, rs, natural);
    CHECK(rel_err(res.lambda, kLambdaHardSphere) < 1e-8);
    CHECK(rel_err(res.f_infinity, kFInfinityHardSphere) < 1e-9);
    REQUIRE(res.curve.size() == rs.size());
    CHECK(res.curve[0].rate == 0.0);
    for (std::size_t i = 0; i < rs.size(); ++i)
    {
        CHECK(res.curve[i].separation == rs[i]);
        CHECK(res.curve[i].rate >= -res.curve[i].error);
        CHECK(res.curve[i].rate <= 2 * res.f_infinity + res.curve[i].error);
        if (i > 0)
        {
            CHECK(res.curve[i].rate > res.curve[i - 1].rate);
        }
    }
}
