#include "colldec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "colldec/errors.hpp"
#include "colldec/parallel.hpp"

namespace colldec
{

void QuadSpec::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    {
        throw ConfigurationError("quadrature tolerances must be positive");
    }
    if (nodes_per_panel < 2)
    {
        throw ConfigurationError("quadrature needs at least 2 nodes per panel");
    }
}

QuadSpec QuadSpec::tightened(double factor) const
{
    QuadSpec s = *this;
    s.rel_tol *= factor;
    s.abs_tol *= factor;
    return s;
}

void MCSpec::validate() const
{
    if (n_samples < 1)
    {
        throw ConfigurationError("Monte Carlo needs at least one sample");
    }
}

//---------------------------------------------------------------------------//
// Gauss-Legendre rule
//---------------------------------------------------------------------------//
namespace
{
GaussRule compute_gauss_legendre(std::size_t n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    auto const nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75)
                            / (nd + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                double const kd = static_cast<double>(k);
                double const p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0)
                                  / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            double const dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
            {
                break;
            }
        }
        double const w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
    {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

struct Panel
{
    double lo;
    double hi;
    double value;  // sum of the two half-panel rules
    double error;
    double left;  // half-panel values reused as the children's coarse rule
    double right;
};

struct ByError
{
    bool operator()(Panel const& a, Panel const& b) const
    {
        return a.error < b.error;
    }
};

class PanelIntegrator
{
  public:
    PanelIntegrator(Integrand1D const& fn, GaussRule const& rule)
        : fn_(fn), rule_(rule)
    {
    }

    double rule(double lo, double hi)
    {
        double const half = 0.5 * (hi - lo);
        double const mid = 0.5 * (hi + lo);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
        {
            double const y = fn_(mid + half * rule_.nodes[i]);
            if (!std::isfinite(y))
            {
                throw std::domain_error("non-finite integrand value at x = "
                                        + std::to_string(mid + half
                                                         * rule_.nodes[i]));
            }
            sum += rule_.weights[i] * y;
        }
        evaluations_ += rule_.nodes.size();
        return half * sum;
    }

    Panel refine(double lo, double hi, double coarse)
    {
        double const mid = 0.5 * (lo + hi);
        Panel p{lo, hi, 0.0, 0.0, rule(lo, mid), rule(mid, hi)};
        p.value = p.left + p.right;
        p.error = std::abs(p.value - coarse);
        return p;
    }

    std::size_t evaluations() const { return evaluations_; }

  private:
    Integrand1D const& fn_;
    GaussRule const& rule_;
    std::size_t evaluations_ = 0;
};

double sum_in_order(std::vector<Panel> panels, double Panel::*field)
{
    std::sort(panels.begin(), panels.end(),
              [](Panel const& a, Panel const& b) { return a.lo < b.lo; });
    double s = 0.0;
    for (auto const& p : panels)
    {
        s += p.*field;
    }
    return s;
}
}  // namespace

GaussRule const& gauss_legendre(std::size_t n)
{
    thread_local std::map<std::size_t, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end())
    {
        it = cache.emplace(n, compute_gauss_legendre(n)).first;
    }
    return it->second;
}

//---------------------------------------------------------------------------//
// Adaptive 1D integration
//---------------------------------------------------------------------------//
Estimate integrate_1d(Integrand1D const& fn, double lo, double hi,
                      QuadSpec const& spec)
{
    double const bp[] = {lo, hi};
    return integrate_1d(fn, std::span<double const>(bp), spec);
}

Estimate integrate_1d(Integrand1D const& fn,
                      std::span<double const> breakpoints,
                      QuadSpec const& spec)
{
    spec.validate();
    if (breakpoints.size() < 2)
    {
        throw std::invalid_argument("integration needs at least two limits");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
    {
        if (!(breakpoints[i - 1] < breakpoints[i]))
        {
            throw std::invalid_argument(
                "integration limits must be strictly increasing");
        }
    }

    PanelIntegrator integ(fn, gauss_legendre(spec.nodes_per_panel));
    std::priority_queue<Panel, std::vector<Panel>, ByError> active;
    std::vector<Panel> frozen;

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
    {
        double const a = breakpoints[i - 1];
        double const b = breakpoints[i];
        Panel p = integ.refine(a, b, integ.rule(a, b));
        total += p.value;
        total_err += p.error;
        active.push(p);
    }

    auto converged = [&] {
        return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    };

    std::size_t subdivisions = 0;
    while (!converged() && !active.empty())
    {
        if (subdivisions >= spec.max_subdivisions)
        {
            Estimate best{total, total_err, integ.evaluations()};
            throw NonConvergenceError(
                "adaptive quadrature exhausted "
                    + std::to_string(spec.max_subdivisions) + " subdivisions",
                best);
        }
        Panel const worst = active.top();
        active.pop();
        double const mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi))
        {
            frozen.push_back(worst);
            continue;
        }
        Panel const l = integ.refine(worst.lo, mid, worst.left);
        Panel const r = integ.refine(mid, worst.hi, worst.right);
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        active.push(l);
        active.push(r);
        ++subdivisions;
    }

    while (!active.empty())
    {
        frozen.push_back(active.top());
        active.pop();
    }
    Estimate result{sum_in_order(frozen, &Panel::value),
                    sum_in_order(frozen, &Panel::error),
                    integ.evaluations()};
    if (!converged())
    {
        throw NonConvergenceError(
            "adaptive quadrature cannot resolve panels below machine precision",
            result);
    }
    return result;
}

std::vector<double> uniform_breakpoints(double lo, double hi, double max_width)
{
    double const span = hi - lo;
    std::size_t n = 1;
    if (max_width > 0.0 && std::isfinite(max_width))
    {
        n = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(span / max_width)));
    }
    std::vector<double> bp(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
    {
        bp[i] = lo + span * static_cast<double>(i) / static_cast<double>(n);
    }
    bp.back() = hi;
    return bp;
}

//---------------------------------------------------------------------------//
// Pairs of unit vectors
//---------------------------------------------------------------------------//
Estimate integrate_sphere_pair(PairIntegrand const& fn, QuadSpec const& spec)
{
    using std::numbers::pi;
    QuadSpec const inner = spec.tightened(0.1);
    double const phi_bp[] = {0.0, pi, 2.0 * pi};

    std::size_t evals = 0;
    double max_err_phi = 0.0;
    double max_err_theta2 = 0.0;

    auto over_theta2 = [&](double theta1) {
        auto over_phi = [&](double theta2) {
            Estimate e = integrate_1d(
                [&](double dphi) { return fn(theta1, theta2, dphi); },
                std::span<double const>(phi_bp), inner);
            evals += e.evaluations;
            max_err_phi = std::max(max_err_phi, e.error_estimate);
            return std::sin(theta2) * e.value;
        };
        Estimate e = integrate_1d(over_phi, 0.0, pi, inner);
        max_err_theta2 = std::max(max_err_theta2, e.error_estimate);
        return std::sin(theta1) * e.value;
    };

    Estimate outer = integrate_1d(over_theta2, 0.0, pi, spec);
    // Prefactor (1 / 4 pi) * 2 pi from the free azimuth of the pair.
    double const pref = 0.5;
    return {pref * outer.value,
            pref * outer.error_estimate + 2.0 * max_err_theta2
                + 4.0 * pref * max_err_phi,
            evals};
}

//---------------------------------------------------------------------------//
// Monte Carlo
//---------------------------------------------------------------------------//
namespace
{
struct RunningMoments
{
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        double const delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(RunningMoments const& other)
    {
        if (other.n == 0)
        {
            return;
        }
        if (n == 0)
        {
            *this = other;
            return;
        }
        double const na = static_cast<double>(n);
        double const nb = static_cast<double>(other.n);
        double const delta = other.mean - mean;
        double const nt = na + nb;
        mean += delta * nb / nt;
        m2 += other.m2 + delta * delta * na * nb / nt;
        n += other.n;
    }

    Estimate estimate() const
    {
        double se = 0.0;
        if (n > 1)
        {
            double const nd = static_cast<double>(n);
            se = std::sqrt(std::max(0.0, m2) / (nd - 1.0) / nd);
        }
        return {mean, se, n};
    }
};
}  // namespace

std::vector<Estimate> mc_integrate(std::size_t n_components,
                                   MCVectorSampler const& sample,
                                   MCSpec const& spec)
{
    spec.validate();
    std::size_t const n_blocks = (spec.n_samples + kMCBlockSize - 1)
                                 / kMCBlockSize;
    std::vector<std::vector<RunningMoments>> partial(
        n_blocks, std::vector<RunningMoments>(n_components));

    for_each_block(n_blocks, [&](std::size_t block) {
        Rng rng = make_stream_rng(spec.seed, block);
        std::size_t const begin = block * kMCBlockSize;
        std::size_t const end = std::min(spec.n_samples, begin + kMCBlockSize);
        std::vector<double> values(n_components);
        auto& acc = partial[block];
        for (std::size_t i = begin; i < end; ++i)
        {
            sample(rng, values);
            for (std::size_t c = 0; c < n_components; ++c)
            {
                if (!std::isfinite(values[c]))
                {
                    throw std::domain_error("non-finite Monte Carlo sample");
                }
                acc[c].add(values[c]);
            }
        }
    });

    std::vector<Estimate> result(n_components);
    for (std::size_t c = 0; c < n_components; ++c)
    {
        RunningMoments total;
        for (auto const& block : partial)
        {
            total.merge(block[c]);
        }
        result[c] = total.estimate();
    }
    return result;
}

Estimate mc_integrate(MCSampler const& sample, MCSpec const& spec)
{
    return mc_integrate(
        1, [&](Rng& rng, std::span<double> out) { out[0] = sample(rng); },
        spec)[0];
}

}  // namespace colldec
