#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "colldec/core.hpp"
#include "colldec/quadrature.hpp"
#include "colldec/scattering.hpp"

namespace colldec::cli
{

enum class Units
{
    si,
    natural
};

char const* to_string(Units u);

/*!
 * Everything a command needs besides its own flags.
 *
 * All numbers are taken in the unit system named by `units`; nothing is
 * inferred from magnitudes.
 */
struct Scenario
{
    Units units = Units::si;
    PhysicalConstants constants;
    BathParams bath{1.0, 1.0, 0.0};
    ParticleParams particle{1.0, 1.0};
    ScatteringModel model = ScatteringModel::hard_sphere(1.0);
    std::string model_name;  //!< "hard_sphere" or "tabulated:<file>"
    QuadSpec quad;
    MCSpec mc;
    bool has_mc = false;  //!< monte_carlo block present in the file
};

/// Parse scenario text. `origin` names the source in error messages and
/// relative table paths are resolved against `base_dir`.
Scenario parse_scenario(std::string const& text, std::string const& origin,
                        std::filesystem::path const& base_dir = {});

Scenario load_scenario(std::filesystem::path const& path);

/// One "# key: value" line per scenario parameter.
void write_scenario_header(std::ostream& os, Scenario const& s);

}  // namespace colldec::cli
