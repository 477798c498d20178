#include <doctest.h>

#include <clocale>
#include <sstream>
#include <string>

#include "colldec/errors.hpp"
#include "commands.hpp"
#include "csv.hpp"
#include "scenario.hpp"

using namespace colldec;
using namespace colldec::cli;

namespace
{
std::string const natural_text = R"({
  "units": "natural",
  "bath": {"mass": 1, "temperature": 1, "density": 1},
  "particle": {"mass": 1, "radius": 1},
  "model": {"type": "hard_sphere"},
  "monte_carlo": {"samples": 20000, "seed": 7}
})";

std::string error_of(std::string const& text)
{
    try
    {
        parse_scenario(text, "s.json");
    }
    catch (ConfigurationError const& e)
    {
        return e.what();
    }
    return {};
}

std::string replace(std::string text, std::string const& from, std::string const& to)
{
    auto const pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}
}  // namespace

TEST_CASE("number formatting round-trips")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    for (double v : {1.0 / 3.0, 6.6843420656826680, 1e-23, 123456789.123456789})
    {
        CHECK(std::stod(format_number(v)) == v);
    }
    // the global C locale must not leak into the output
    char const* old = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    CHECK(format_number(0.5) == "0.5");
    if (old)
    {
        std::setlocale(LC_NUMERIC, "C");
    }
}

TEST_CASE("scenario parsing")
{
    auto const s = parse_scenario(natural_text, "s.json");
    CHECK(s.units == Units::natural);
    CHECK(s.constants.hbar == 1.0);
    CHECK(s.bath.density() == 1.0);
    CHECK(s.model.is_hard_sphere());
    CHECK(s.mc.n_samples == 20000);
    CHECK(s.mc.seed == 7);

    auto const si = parse_scenario(replace(natural_text, "\"natural\"", "\"si\""), "s.json");
    CHECK(si.constants.hbar == PhysicalConstants{}.hbar);

    auto const custom = parse_scenario(
        replace(natural_text, "\"units\": \"natural\",",
                "\"units\": \"natural\", \"constants\": {\"hbar\": 1e-34},"),
        "s.json");
    CHECK(custom.constants.hbar == 1e-34);
    CHECK(custom.constants.k_boltzmann == 1.0);
}

TEST_CASE("scenario errors carry the offending line")
{
    CHECK(error_of(replace(natural_text, "\"natural\"", "\"cgs\""))
              .starts_with("s.json:2: units must be"));
    CHECK(error_of(replace(natural_text, "\"temperature\": 1", "\"temperature\": -1"))
              .starts_with("s.json:3: 'bath.temperature' must be positive"));
    CHECK(error_of(replace(natural_text, "\"radius\": 1", "\"radius\": \"big\""))
              .starts_with("s.json:4: 'particle.radius' must be a number"));
    CHECK(error_of(replace(natural_text, "\"radius\": 1", "\"raduis\": 1"))
              .starts_with("s.json:4: unknown key"));
    CHECK(error_of(replace(natural_text, "\"mass\": 1, \"radius\": 1", "\"radius\": 1"))
              .starts_with("s.json:4: missing required number 'particle.mass'"));
    CHECK(error_of(replace(natural_text, "\"hard_sphere\"", "\"soft\""))
              .starts_with("s.json:5: model.type must be"));
    CHECK(error_of(replace(natural_text, "\"samples\": 20000", "\"samples\": 0"))
              .starts_with("s.json:6:"));
    CHECK(error_of(replace(natural_text, "\"samples\": 20000", "\"samples\": 2.5"))
              .starts_with("s.json:6:"));
    // syntax error: missing comma at the end of line 3
    CHECK(error_of(replace(natural_text, "\"density\": 1},", "\"density\": 1}"))
              .starts_with("s.json:4: syntax error"));
    CHECK(error_of(replace(natural_text, "\"model\": {\"type\": \"hard_sphere\"},\n", ""))
              .find("missing required object 'model'")
          != std::string::npos);
    CHECK(error_of("[1, 2]").find("must be a JSON object") != std::string::npos);
    CHECK(error_of(replace(natural_text, "\"hard_sphere\"}",
                           "\"tabulated\", \"file\": \"nope.csv\"}"))
              .starts_with("s.json:5: cannot open"));
}

TEST_CASE("summaries")
{
    auto const s = parse_scenario(natural_text, "s.json");
    std::ostringstream out;
    run_crosscheck(s, out);
    CHECK(out.str().find("C quantum:            4.456228043788") != std::string::npos);
    CHECK(out.str().find("uncorrected (x 2 pi): 27.99930657017") != std::string::npos);

    std::ostringstream lam;
    run_lambda(s, lam);
    CHECK(lam.str().find("lambda closed form:  6.68434206568266") != std::string::npos);
}

TEST_CASE("CSV commands are reproducible and self-describing")
{
    auto const s = parse_scenario(natural_text, "s.json");
    FCurveOptions opt;
    opt.r_min = 0.1;
    opt.r_max = 3.0;
    opt.points = 3;
    opt.monte_carlo = true;
    std::ostringstream a;
    std::ostringstream b;
    run_fcurve(s, opt, a);
    run_fcurve(s, opt, b);
    CHECK(a.str() == b.str());
    auto const text = a.str();
    CHECK(text.starts_with("# colldec "));
    CHECK(text.find("# units: natural\n") != std::string::npos);
    CHECK(text.find("# seed: 7\n") != std::string::npos);
    CHECK(text.find("\nR,F,F_error,F_mc,") != std::string::npos);
    CHECK(text.find('\r') == std::string::npos);

    opt.points = 0;
    CHECK_THROWS_AS(run_fcurve(s, opt, a), ConfigurationError);
    opt.points = 2;
    opt.log = true;
    opt.r_min = 0.0;
    CHECK_THROWS_AS(run_fcurve(s, opt, a), ConfigurationError);

    std::ostringstream m;
    run_msd(s, {1.0, 4}, m);
    CHECK(m.str().find("\n1,4.456228043788445") != std::string::npos);

    LangevinOptions lopt;
    lopt.traj = 2000;
    lopt.dt = 1e-5;
    lopt.t_end = 1e-3;
    std::ostringstream l1;
    std::ostringstream l2;
    run_langevin(s, lopt, l1);
    run_langevin(s, lopt, l2);
    CHECK(l1.str() == l2.str());
}
