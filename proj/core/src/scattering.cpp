#include "colldec/scattering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "colldec/errors.hpp"

namespace colldec
{
namespace
{
using std::numbers::pi;

void check_theta(double theta)
{
    if (!(theta >= 0.0 && theta <= pi))
    {
        throw std::domain_error("scattering angle outside [0, pi]");
    }
}

void check_increasing(std::vector<double> const& axis, char const* name)
{
    if (axis.size() < 2)
    {
        throw ConfigurationError(std::string(name)
                                 + " axis needs at least two points");
    }
    for (std::size_t i = 0; i < axis.size(); ++i)
    {
        if (!std::isfinite(axis[i]) || (i > 0 && !(axis[i] > axis[i - 1])))
        {
            throw ConfigurationError(std::string(name)
                                     + " axis must be strictly increasing");
        }
    }
}

// Index of the cell [axis[i], axis[i+1]] that contains x; x is in range.
std::size_t cell(std::vector<double> const& axis, double x)
{
    auto const it = std::upper_bound(axis.begin(), axis.end(), x);
    auto i = static_cast<std::size_t>(it - axis.begin());
    return std::clamp<std::size_t>(i, 1, axis.size() - 1) - 1;
}
}  // namespace

//---------------------------------------------------------------------------//
TabulatedIsotropic::TabulatedIsotropic(std::vector<double> q,
                                       std::vector<double> theta,
                                       std::vector<double> f2)
    : q_(std::move(q)), theta_(std::move(theta)), f2_(std::move(f2))
{
    check_increasing(q_, "momentum");
    check_increasing(theta_, "angle");
    if (q_.front() < 0.0)
    {
        throw ConfigurationError("momentum axis must be non-negative");
    }
    constexpr double snap = 1e-9;
    if (std::abs(theta_.front()) > snap || std::abs(theta_.back() - pi) > snap)
    {
        throw ConfigurationError("angle axis must span [0, pi]");
    }
    theta_.front() = 0.0;
    theta_.back() = pi;
    if (f2_.size() != q_.size() * theta_.size())
    {
        throw ConfigurationError("cross-section table is not rectangular");
    }
    for (double v : f2_)
    {
        if (!std::isfinite(v) || v < 0.0)
        {
            throw ConfigurationError(
                "cross-section values must be finite and non-negative");
        }
    }
}

double TabulatedIsotropic::operator()(double q, double theta) const
{
    check_theta(theta);
    if (!(q >= q_.front() && q <= q_.back()))
    {
        throw std::domain_error("momentum outside the tabulated range");
    }
    std::size_t const i = cell(q_, q);
    std::size_t const j = cell(theta_, theta);
    double const s = (q - q_[i]) / (q_[i + 1] - q_[i]);
    double const t = (theta - theta_[j]) / (theta_[j + 1] - theta_[j]);
    std::size_t const nt = theta_.size();
    double const f00 = f2_[i * nt + j];
    double const f01 = f2_[i * nt + j + 1];
    double const f10 = f2_[(i + 1) * nt + j];
    double const f11 = f2_[(i + 1) * nt + j + 1];
    return (1 - s) * ((1 - t) * f00 + t * f01) + s * ((1 - t) * f10 + t * f11);
}

//---------------------------------------------------------------------------//
ScatteringModel ScatteringModel::hard_sphere(double radius)
{
    if (!(std::isfinite(radius) && radius > 0.0))
    {
        throw ConfigurationError("hard-sphere radius must be positive");
    }
    return ScatteringModel(HardSphere{radius});
}

ScatteringModel ScatteringModel::tabulated(std::vector<double> q,
                                           std::vector<double> theta,
                                           std::vector<double> f2)
{
    return ScatteringModel(
        TabulatedIsotropic(std::move(q), std::move(theta), std::move(f2)));
}

double ScatteringModel::dsigma_domega(double q, double theta) const
{
    if (auto const* hs = std::get_if<HardSphere>(&model_))
    {
        check_theta(theta);
        if (q < 0.0)
        {
            throw std::domain_error("momentum magnitude must be non-negative");
        }
        return 0.25 * hs->radius * hs->radius;
    }
    return std::get<TabulatedIsotropic>(model_)(q, theta);
}

double ScatteringModel::sigma_total(double q, QuadSpec const& spec) const
{
    if (auto const* hs = std::get_if<HardSphere>(&model_))
    {
        if (q < 0.0)
        {
            throw std::domain_error("momentum magnitude must be non-negative");
        }
        return pi * hs->radius * hs->radius;
    }
    return sigma_total_quadrature(*this, q, spec).value;
}

std::pair<double, double> ScatteringModel::q_domain() const
{
    if (is_hard_sphere())
    {
        return {0.0, INFINITY};
    }
    auto const& axis = std::get<TabulatedIsotropic>(model_).q_axis();
    return {axis.front(), axis.back()};
}

std::vector<double> ScatteringModel::kink_angles() const
{
    if (is_hard_sphere())
    {
        return {};
    }
    return std::get<TabulatedIsotropic>(model_).theta_axis();
}

std::vector<double> ScatteringModel::kink_momenta() const
{
    if (is_hard_sphere())
    {
        return {};
    }
    return std::get<TabulatedIsotropic>(model_).q_axis();
}

ScatteringModel ScatteringModel::rescaled(double momentum_scale,
                                          double length_scale) const
{
    double const area = length_scale * length_scale;
    if (auto const* hs = std::get_if<HardSphere>(&model_))
    {
        return hard_sphere(hs->radius / length_scale);
    }
    auto const& tab = std::get<TabulatedIsotropic>(model_);
    std::vector<double> q = tab.q_axis();
    for (double& v : q)
    {
        v /= momentum_scale;
    }
    std::vector<double> f2 = tab.values();
    for (double& v : f2)
    {
        v /= area;
    }
    return tabulated(std::move(q), tab.theta_axis(), std::move(f2));
}

Estimate sigma_total_quadrature(ScatteringModel const& model, double q,
                                QuadSpec const& spec)
{
    std::vector<double> bp = model.kink_angles();
    if (bp.empty())
    {
        bp = {0.0, pi};
    }
    Estimate e = integrate_1d(
        [&](double theta) {
            return model.dsigma_domega(q, theta) * std::sin(theta);
        },
        bp, spec);
    e.value *= 2.0 * pi;
    e.error_estimate *= 2.0 * pi;
    return e;
}

//---------------------------------------------------------------------------//
// CSV loader
//---------------------------------------------------------------------------//
namespace
{
std::string trim(std::string s)
{
    auto const not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

[[noreturn]] void fail(std::size_t line, std::string const& msg)
{
    throw ConfigurationError("cross-section table line "
                             + std::to_string(line) + ": " + msg);
}

double parse_number(std::string const& field, std::size_t line)
{
    std::string const t = trim(field);
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(t, &used);
    }
    catch (std::exception const&)
    {
        fail(line, "cannot parse number '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v))
    {
        fail(line, "cannot parse number '" + t + "'");
    }
    return v;
}
}  // namespace

ScatteringModel load_tabulated_csv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    struct Row
    {
        double q, theta, f2;
        std::size_t line;
    };
    std::vector<Row> rows;

    while (std::getline(in, line))
    {
        ++lineno;
        std::string const t = trim(line);
        if (t.empty() || t.front() == '#')
        {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string f;
        while (std::getline(ss, f, ','))
        {
            fields.push_back(f);
        }
        if (!header)
        {
            if (fields.size() != 3 || trim(fields[0]) != "q"
                || trim(fields[1]) != "theta" || trim(fields[2]) != "f2")
            {
                fail(lineno, "expected header 'q,theta,f2'");
            }
            header = true;
            continue;
        }
        if (fields.size() != 3)
        {
            fail(lineno, "expected 3 fields");
        }
        rows.push_back({parse_number(fields[0], lineno),
                        parse_number(fields[1], lineno),
                        parse_number(fields[2], lineno), lineno});
    }
    if (!header)
    {
        fail(lineno, "missing header 'q,theta,f2'");
    }
    if (rows.empty())
    {
        fail(lineno, "table has no data rows");
    }

    std::vector<double> theta;
    for (auto const& r : rows)
    {
        if (r.q != rows.front().q)
        {
            break;
        }
        theta.push_back(r.theta);
    }
    std::size_t const nt = theta.size();
    if (rows.size() % nt != 0)
    {
        fail(rows.back().line, "grid is not rectangular");
    }
    std::vector<double> q;
    std::vector<double> f2;
    f2.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& r = rows[i];
        std::size_t const iq = i / nt;
        std::size_t const it = i % nt;
        if (it == 0)
        {
            q.push_back(r.q);
        }
        if (r.q != q[iq] || r.theta != theta[it])
        {
            fail(r.line, "grid is not rectangular (expected q = "
                             + std::to_string(q[iq]) + ", theta = "
                             + std::to_string(theta[it]) + ")");
        }
        f2.push_back(r.f2);
    }
    try
    {
        return ScatteringModel::tabulated(std::move(q), std::move(theta),
                                          std::move(f2));
    }
    catch (ConfigurationError const& e)
    {
        throw ConfigurationError(std::string("cross-section table: ")
                                 + e.what());
    }
}

ScatteringModel load_tabulated_csv_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigurationError("cannot open cross-section table '" + path
                                 + "'");
    }
    return load_tabulated_csv(in);
}

}  // namespace colldec
