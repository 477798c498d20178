#include "colldec/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "colldec/errors.hpp"

namespace colldec
{
namespace
{
using std::numbers::pi;

// FFTW planning is not thread safe.
std::mutex g_plan_mutex;

/// In-place 2D transform pair over a GridState buffer.
class FftPlan2D
{
  public:
    FftPlan2D(std::size_t n, std::vector<std::complex<double>>& buffer)
    {
        auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
        int const ni = static_cast<int>(n);
        std::lock_guard lock(g_plan_mutex);
        // ESTIMATE keeps the chosen algorithm, and so the rounding,
        // identical from run to run.
        forward_ = fftw_plan_dft_2d(ni, ni, data, data, FFTW_FORWARD,
                                    FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_2d(ni, ni, data, data, FFTW_BACKWARD,
                                     FFTW_ESTIMATE);
    }
    ~FftPlan2D()
    {
        std::lock_guard lock(g_plan_mutex);
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    FftPlan2D(FftPlan2D const&) = delete;
    FftPlan2D& operator=(FftPlan2D const&) = delete;

    void forward() const { fftw_execute(forward_); }
    void backward() const { fftw_execute(backward_); }

  private:
    fftw_plan forward_;
    fftw_plan backward_;
};

std::vector<double> wavenumbers(std::size_t n, double box)
{
    std::vector<double> k(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        auto const m = (j < n / 2) ? static_cast<double>(j)
                                   : static_cast<double>(j)
                                         - static_cast<double>(n);
        k[j] = 2.0 * pi * m / box;
    }
    return k;
}
}  // namespace

//---------------------------------------------------------------------------//
GridState::GridState(std::size_t n, double box_length)
    : n_(n), box_(box_length), data_(n * n)
{
    if (n < 4 || n % 2 != 0)
    {
        throw ConfigurationError("grid size must be even and at least 4");
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length))
    {
        throw ConfigurationError("box length must be positive");
    }
}

GridState GridState::gaussian(std::size_t n, double box_length, double sigma,
                              double center)
{
    if (!(sigma > 0.0))
    {
        throw ConfigurationError("wave packet width must be positive");
    }
    GridState g(n, box_length);
    std::vector<double> psi(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const u = (g.x(i) - center) / sigma;
        psi[i] = std::exp(-0.25 * u * u);
        norm += psi[i] * psi[i] * g.dx();
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            g(i, j) = psi[i] * psi[j] / norm;
        }
    }
    return g;
}

double GridState::trace() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
    {
        s += (*this)(i, i).real();
    }
    return s * dx();
}

double GridState::second_moment() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
    {
        s += x(i) * x(i) * (*this)(i, i).real();
    }
    return s * dx();
}

double GridState::purity() const
{
    double s = 0.0;
    for (auto const& v : data_)
    {
        s += std::norm(v);
    }
    return s * dx() * dx();
}

double GridState::hermiticity_error() const
{
    double e = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
    {
        for (std::size_t j = i; j < n_; ++j)
        {
            e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return e;
}

double GridState::min_diagonal() const
{
    double m = INFINITY;
    for (std::size_t i = 0; i < n_; ++i)
    {
        m = std::min(m, (*this)(i, i).real());
    }
    return m;
}

double GridState::max_diagonal_imag() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
    {
        m = std::max(m, std::abs((*this)(i, i).imag()));
    }
    return m;
}

double GridState::edge_density(std::size_t width) const
{
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(width, n_); ++i)
    {
        m = std::max(m, std::abs((*this)(i, i)));
        std::size_t const j = n_ - 1 - i;
        m = std::max(m, std::abs((*this)(j, j)));
    }
    return m;
}

double GridState::momentum_second_moment(PhysicalConstants const& consts) const
{
    // <p^2> = sum_k hbar^2 k^2 rho~(k, k) with rho~ the unitary transform;
    // for rho = sum_k c_k e^{ikx1} c*_k e^{-ikx2}, only (k, -k) pairs of the
    // plain 2D FFT carry the diagonal.
    std::vector<std::complex<double>> work = data_;
    FftPlan2D plan(n_, work);
    plan.forward();
    auto const k = wavenumbers(n_, box_);
    double s = 0.0;
    double tr = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
    {
        std::size_t const jm = (n_ - j) % n_;
        double const w = work[j * n_ + jm].real();
        s += k[j] * k[j] * w;
        tr += w;
    }
    return consts.hbar * consts.hbar * s / tr;
}

//---------------------------------------------------------------------------//
GridState evolve_grid(GridState state, double lambda, double mass, double dt,
                      std::size_t n_steps, PhysicalConstants const& consts,
                      GridObserver const& observer)
{
    consts.validate();
    if (!(dt > 0.0) || !std::isfinite(dt))
    {
        throw ConfigurationError("grid time step must be positive");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
    {
        throw ConfigurationError("Lambda must be finite and non-negative");
    }
    if (!(mass > 0.0))
    {
        throw ConfigurationError("mass must be positive");
    }

    std::size_t const n = state.size();
    double const dx = state.dx();
    double const hbar = consts.hbar;
    double const duration = dt * static_cast<double>(n_steps);
    bool const kinetic = std::isfinite(mass);

    // Resolution of the coherence length
    if (lambda * duration > 0.0)
    {
        double const coherence = 1.0 / std::sqrt(lambda * duration);
        if (dx > coherence / 8.0)
        {
            std::ostringstream os;
            os << "grid spacing " << dx << " does not resolve coherence length "
               << coherence << " (need dx <= " << coherence / 8.0 << ")";
            throw ConfigurationError(os.str());
        }
    }
    if (state.edge_density() > kGridEdgeDensity)
    {
        throw ConfigurationError(
            "initial density at the box edge exceeds 1e-10; enlarge the box");
    }
    if (kinetic)
    {
        double const xx0 = state.second_moment() / state.trace();
        double const pp0 = state.momentum_second_moment(consts);
        double const pp_end = pp0 + 2.0 * hbar * hbar * lambda * duration;
        if (hbar * pi / dx < 8.0 * std::sqrt(pp_end))
        {
            throw ConfigurationError(
                "grid spacing too coarse for the momentum spread reached");
        }
        // Gaussian envelope with a Cauchy-Schwarz bound on <xp>
        double const spread = std::sqrt(xx0) + std::sqrt(pp0) * duration / mass;
        double const xx_end = spread * spread
                              + 2.0 * hbar * hbar * lambda * duration
                                    * duration * duration
                                    / (3.0 * mass * mass);
        double const half = 0.5 * state.box_length();
        double const edge = std::exp(-half * half / (2.0 * xx_end))
                            / std::sqrt(2.0 * pi * xx_end);
        if (edge > kGridEdgeDensity)
        {
            std::ostringstream os;
            os << "box too small: predicted edge density " << edge
               << " exceeds 1e-10 by t = " << state.time() + duration;
            throw ConfigurationError(os.str());
        }
    }

    // Pointwise decoherence factor for one step
    std::vector<double> decay(n * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            double const d = state.x(i) - state.x(j);
            decay[i * n + j] = std::exp(-lambda * d * d * dt);
        }
    }

    auto& rho = state.data();
    std::vector<std::complex<double>> half_kick;
    std::unique_ptr<FftPlan2D> plan;
    if (kinetic)
    {
        auto const k = wavenumbers(n, state.box_length());
        double const inv_norm = 1.0 / static_cast<double>(n * n);
        double const rate = hbar * 0.5 * dt / (2.0 * mass);
        half_kick.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
            {
                double const phase = -rate * (k[i] * k[i] - k[j] * k[j]);
                half_kick[i * n + j] = std::polar(inv_norm, phase);
            }
        }
        plan = std::make_unique<FftPlan2D>(n, rho);
    }
    auto kinetic_half_step = [&] {
        plan->forward();
        for (std::size_t idx = 0; idx < rho.size(); ++idx)
        {
            rho[idx] *= half_kick[idx];
        }
        plan->backward();
    };

    double const t0 = state.time();
    for (std::size_t step = 0; step < n_steps; ++step)
    {
        if (kinetic)
        {
            kinetic_half_step();
        }
        for (std::size_t idx = 0; idx < rho.size(); ++idx)
        {
            rho[idx] *= decay[idx];
        }
        if (kinetic)
        {
            kinetic_half_step();
        }
        state.set_time(t0 + static_cast<double>(step + 1) * dt);
        if (observer)
        {
            observer(state);
        }
    }
    return state;
}

}  // namespace colldec
