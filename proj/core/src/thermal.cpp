#include "colldec/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace colldec
{

namespace reduced
{
double mu(Vec3 const& p)
{
    // (2 pi)^(-3/2)
    constexpr double norm = 0.063493635934240969;
    return norm * std::exp(-0.5 * dot(p, p));
}

double nu(double q)
{
    if (q < 0.0)
    {
        throw std::domain_error("momentum magnitude must be non-negative");
    }
    // sqrt(2 / pi)
    constexpr double norm = 0.79788456080286536;
    return norm * q * q * std::exp(-0.5 * q * q);
}

double nu_cdf(double q)
{
    if (q <= 0.0)
    {
        return 0.0;
    }
    constexpr double norm = 0.79788456080286536;
    return std::erf(q / std::numbers::sqrt2) - norm * q * std::exp(-0.5 * q * q);
}
}  // namespace reduced

MomentumDistribution::MomentumDistribution(BathParams const& bath,
                                           PhysicalConstants const& consts)
    : scales_(make_scales(bath, consts))
{
    // (beta / 2 pi m)^(3/2) = p0^-3 (2 pi)^(-3/2)
    mu_norm_ = 1.0 / (scales_.p0 * scales_.p0 * scales_.p0);
}

double MomentumDistribution::mu(Vec3 const& p) const
{
    double const s = 1.0 / scales_.p0;
    return mu_norm_ * reduced::mu({p[0] * s, p[1] * s, p[2] * s});
}

double MomentumDistribution::nu(double q) const
{
    return reduced::nu(q / scales_.p0) / scales_.p0;
}

double MomentumDistribution::cdf(double q) const
{
    return reduced::nu_cdf(q / scales_.p0);
}

double MomentumDistribution::thermal_momentum() const
{
    return std::numbers::sqrt2 * scales_.p0;
}

double MomentumDistribution::cutoff() const
{
    return reduced::kMomentumCutoff * scales_.p0;
}

//---------------------------------------------------------------------------//
double thermal_average_q2v(BathParams const& bath,
                           PhysicalConstants const& consts)
{
    double const kT = bath.kT(consts);
    return 4.0 * std::sqrt(bath.mass() / std::numbers::pi)
           * std::pow(2.0 * kT, 1.5);
}

Estimate thermal_average_q2v_quadrature(BathParams const& bath,
                                        PhysicalConstants const& consts,
                                        QuadSpec const& spec)
{
    auto const s = make_scales(bath, consts);
    Estimate e = integrate_1d(
        [](double q) { return reduced::nu(q) * q * q * q; }, 0.0,
        reduced::kMomentumCutoff, spec);
    double const unit = s.p0 * s.p0 * s.velocity();
    e.value *= unit;
    e.error_estimate *= unit;
    return e;
}

double thermal_average_speed(BathParams const& bath,
                             PhysicalConstants const& consts)
{
    return std::sqrt(8.0 * bath.kT(consts) / (std::numbers::pi * bath.mass()));
}

Estimate thermal_average_speed_quadrature(BathParams const& bath,
                                          PhysicalConstants const& consts,
                                          QuadSpec const& spec)
{
    auto const s = make_scales(bath, consts);
    Estimate e = integrate_1d([](double q) { return reduced::nu(q) * q; }, 0.0,
                              reduced::kMomentumCutoff, spec);
    e.value *= s.velocity();
    e.error_estimate *= s.velocity();
    return e;
}

//---------------------------------------------------------------------------//
SpeedSampler::SpeedSampler(BathParams const& bath,
                           PhysicalConstants const& consts,
                           std::size_t table_size)
    : p0_(make_scales(bath, consts).p0)
{
    if (table_size < 4)
    {
        throw std::invalid_argument("speed sampler table is too small");
    }
    // Knots uniform in q; drop those where the CDF has saturated in double.
    double const q_hi = reduced::kMomentumCutoff;
    for (std::size_t i = 0; i < table_size; ++i)
    {
        double const q = q_hi * static_cast<double>(i)
                         / static_cast<double>(table_size - 1);
        double const u = reduced::nu_cdf(q);
        if (!u_.empty() && !(u > u_.back()))
        {
            break;
        }
        u_.push_back(u);
        q_.push_back(q);
    }
    if (u_.back() < 1.0)
    {
        u_.push_back(1.0);
        q_.push_back(q_hi);
    }

    // Fritsch-Carlson slopes for q(u)
    std::size_t const n = u_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        secant[i] = (q_[i + 1] - q_[i]) / (u_[i + 1] - u_[i]);
    }
    slope_.resize(n);
    slope_.front() = secant.front();
    slope_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        double const a = secant[i - 1];
        double const b = secant[i];
        slope_[i] = (a * b <= 0.0) ? 0.0 : 2.0 / (1.0 / a + 1.0 / b);
    }
}

double SpeedSampler::inverse_cdf(double u) const
{
    u = std::clamp(u, 0.0, 1.0);
    auto const it = std::upper_bound(u_.begin(), u_.end(), u);
    std::size_t i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - u_.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(u_.size()) - 2));
    double const h = u_[i + 1] - u_[i];
    double const t = (u - u_[i]) / h;
    double const t2 = t * t;
    double const t3 = t2 * t;
    double q = (2 * t3 - 3 * t2 + 1) * q_[i] + (t3 - 2 * t2 + t) * h * slope_[i]
               + (-2 * t3 + 3 * t2) * q_[i + 1] + (t3 - t2) * h * slope_[i + 1];
    q = std::clamp(q, q_[i], q_[i + 1]);
    int polish = 2;
    if (i == 0)
    {
        // q(u) ~ u^(1/3) near the origin, which the spline cannot follow
        q = std::min(std::cbrt(3.0 * u * std::sqrt(std::numbers::pi / 2.0)),
                     q_[1]);
        polish = 8;
    }

    for (int iter = 0; iter < polish; ++iter)
    {
        double const density = reduced::nu(q);
        if (!(density > 1e-300))
        {
            break;
        }
        double const next = q - (reduced::nu_cdf(q) - u) / density;
        q = std::clamp(next, q_[i], q_[i + 1]);
    }
    return q;
}

double SpeedSampler::sample_reduced(Rng& rng) const
{
    return inverse_cdf(uniform01(rng));
}

double SpeedSampler::operator()(Rng& rng) const
{
    return p0_ * sample_reduced(rng);
}

}  // namespace colldec
