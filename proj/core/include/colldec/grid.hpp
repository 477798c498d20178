#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "colldec/core.hpp"

namespace colldec
{

//---------------------------------------------------------------------------//
/*!
 * One-axis density matrix rho(x1, x2) on the uniform periodic grid
 * x_i = -L/2 + i dx, i in [0, N), stored row-major in x1.
 */
class GridState
{
  public:
    using value_type = std::complex<double>;

    GridState(std::size_t n, double box_length);

    /// Pure Gaussian wave packet |psi><psi| with position spread sigma,
    /// centered at `center`, normalized so the discrete trace is one.
    static GridState gaussian(std::size_t n, double box_length, double sigma,
                              double center = 0.0);

    std::size_t size() const { return n_; }
    double box_length() const { return box_; }
    double dx() const { return box_ / static_cast<double>(n_); }
    double x(std::size_t i) const
    {
        return -0.5 * box_ + static_cast<double>(i) * dx();
    }
    double time() const { return t_; }
    void set_time(double t) { t_ = t; }

    value_type& operator()(std::size_t i1, std::size_t i2)
    {
        return data_[i1 * n_ + i2];
    }
    value_type operator()(std::size_t i1, std::size_t i2) const
    {
        return data_[i1 * n_ + i2];
    }

    std::vector<value_type>& data() { return data_; }
    std::vector<value_type> const& data() const { return data_; }

    /// sum_i Re rho(x_i, x_i) dx
    double trace() const;
    /// sum_i x_i^2 Re rho(x_i, x_i) dx
    double second_moment() const;
    /// sum |rho|^2 dx^2 (= tr rho^2)
    double purity() const;
    /// max |rho(x1, x2) - conj rho(x2, x1)|
    double hermiticity_error() const;
    /// min Re rho(x_i, x_i)
    double min_diagonal() const;
    /// max |Im rho(x_i, x_i)|
    double max_diagonal_imag() const;
    /// Largest diagonal density within `width` points of either edge
    double edge_density(std::size_t width = 1) const;
    /// <p^2> from the spectral diagonal
    double momentum_second_moment(PhysicalConstants const& consts) const;

  private:
    std::size_t n_;
    double box_;
    double t_ = 0.0;
    std::vector<value_type> data_;
};

/// Called with the state after each step.
using GridObserver = std::function<void(GridState const&)>;

/*!
 * Split-step evolution of rho under
 *   d rho/dt = -(i/hbar)[P^2/2M, rho] - Lambda (x1 - x2)^2 rho.
 *
 * Each step is a half kinetic step in Fourier space, the exact
 * decoherence factor exp(-Lambda (x1-x2)^2 dt), and another half kinetic
 * step. An infinite mass disables the kinetic term.
 *
 * Throws ConfigurationError when the grid does not resolve the coherence
 * length 1/sqrt(Lambda t_end) by 8 points, cannot hold the momentum
 * spread, or when the (predicted) density at the box edge exceeds 1e-10.
 */
GridState evolve_grid(GridState initial, double lambda, double mass,
                      double dt, std::size_t n_steps,
                      PhysicalConstants const& consts = {},
                      GridObserver const& observer = {});

inline constexpr double kGridEdgeDensity = 1e-10;

}  // namespace colldec
