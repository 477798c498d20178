#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "colldec/quadrature.hpp"

namespace colldec
{

/// Geometric-limit hard sphere: constant |f|^2 = a^2 / 4, so that the
/// isotropic part integrates to pi a^2. The forward diffraction peak is not
/// part of the model.
struct HardSphere
{
    double radius;
};

//---------------------------------------------------------------------------//
/*!
 * |f(q, theta)|^2 on a rectangular grid, bilinearly interpolated.
 *
 * The theta axis spans [0, pi]; the q axis is strictly increasing. Values
 * outside the q axis are rejected, never extrapolated.
 */
class TabulatedIsotropic
{
  public:
    // f2 is row-major: f2[iq * theta.size() + itheta]
    TabulatedIsotropic(std::vector<double> q, std::vector<double> theta,
                       std::vector<double> f2);

    double operator()(double q, double theta) const;

    std::vector<double> const& q_axis() const { return q_; }
    std::vector<double> const& theta_axis() const { return theta_; }
    std::vector<double> const& values() const { return f2_; }

  private:
    std::vector<double> q_;
    std::vector<double> theta_;
    std::vector<double> f2_;
};

//---------------------------------------------------------------------------//
/*!
 * Differential cross section |f(q, theta)|^2 of an isotropic medium.
 *
 * "Total" cross section always means the non-forward part: the forward
 * diffraction peak of the geometric limit does not decohere and is
 * excluded everywhere.
 */
class ScatteringModel
{
  public:
    static ScatteringModel hard_sphere(double radius);
    static ScatteringModel tabulated(std::vector<double> q,
                                     std::vector<double> theta,
                                     std::vector<double> f2);

    /// |f(q, theta)|^2, area per steradian
    double dsigma_domega(double q, double theta) const;

    /// 2 pi \int |f|^2 sin(theta) dtheta. Exact pi a^2 for the hard sphere.
    double sigma_total(double q, QuadSpec const& spec = {}) const;

    /// Momentum range on which the model is defined.
    std::pair<double, double> q_domain() const;

    /// Angles where |f|^2 has interpolation kinks (empty for hard sphere).
    std::vector<double> kink_angles() const;
    /// Momenta where |f|^2 has interpolation kinks.
    std::vector<double> kink_momenta() const;

    bool is_hard_sphere() const
    {
        return std::holds_alternative<HardSphere>(model_);
    }

    /// Same model with momenta divided by `momentum_scale` and areas
    /// divided by `length_scale`^2.
    ScatteringModel rescaled(double momentum_scale, double length_scale) const;

    std::variant<HardSphere, TabulatedIsotropic> const& variant() const
    {
        return model_;
    }

  private:
    explicit ScatteringModel(std::variant<HardSphere, TabulatedIsotropic> m)
        : model_(std::move(m))
    {
    }

    std::variant<HardSphere, TabulatedIsotropic> model_;
};

/// Numerical 2 pi \int |f|^2 sin(theta) dtheta for any model.
Estimate sigma_total_quadrature(ScatteringModel const& model, double q,
                                QuadSpec const& spec = {});

/*!
 * Read a tabulated model from CSV with header `q,theta,f2`, one row per
 * grid point, all theta values of the first q before the next q. Units
 * are whatever the caller's scenario uses (SI: kg m/s, rad, m^2/sr).
 * Throws ConfigurationError naming the offending line.
 */
ScatteringModel load_tabulated_csv(std::istream& in);
ScatteringModel load_tabulated_csv_file(std::string const& path);

}  // namespace colldec
