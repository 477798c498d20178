#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "colldec/errors.hpp"
#include "csv.hpp"

namespace colldec::cli
{
namespace
{
using nlohmann::json;

//---------------------------------------------------------------------------//
// Key -> line index built from a SAX pass over the raw text
//---------------------------------------------------------------------------//
class CountingIterator
{
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = char const*;
    using reference = char const&;

    CountingIterator(char const* p, std::size_t* line) : p_(p), line_(line) {}

    reference operator*() const { return *p_; }
    CountingIterator& operator++()
    {
        if (*p_ == '\n')
        {
            ++*line_;
        }
        ++p_;
        return *this;
    }
    CountingIterator operator++(int)
    {
        auto old = *this;
        ++*this;
        return old;
    }
    bool operator==(CountingIterator const& o) const { return p_ == o.p_; }
    bool operator!=(CountingIterator const& o) const { return p_ != o.p_; }

  private:
    char const* p_;
    std::size_t* line_;
};

using LineIndex = std::map<std::string, std::size_t>;

class KeyLines : public nlohmann::json_sax<json>
{
  public:
    KeyLines(std::size_t const* line, LineIndex* index)
        : line_(line), index_(index)
    {
    }

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, string_t const&) override
    {
        return value();
    }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }

    bool start_object(std::size_t) override
    {
        enter();
        stack_.push_back({false, 0, {}});
        return true;
    }
    bool key(string_t& k) override
    {
        stack_.back().key = k;
        (*index_)[path()] = *line_ + 1;
        return true;
    }
    bool end_object() override
    {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override
    {
        enter();
        stack_.push_back({true, 0, {}});
        return true;
    }
    bool end_array() override
    {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t, std::string const&,
                     nlohmann::detail::exception const&) override
    {
        return false;
    }

  private:
    struct Frame
    {
        bool is_array;
        std::size_t index;
        std::string key;
    };

    bool value()
    {
        enter();
        return true;
    }
    void enter()
    {
        if (!stack_.empty() && stack_.back().is_array)
        {
            stack_.back().key = std::to_string(stack_.back().index++);
            (*index_)[path()] = *line_ + 1;
        }
    }
    std::string path() const
    {
        std::string p;
        for (auto const& f : stack_)
        {
            p += (p.empty() ? "" : ".") + f.key;
        }
        return p;
    }

    std::size_t const* line_;
    LineIndex* index_;
    std::vector<Frame> stack_;
};

std::size_t line_of_offset(std::string const& text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1
           + static_cast<std::size_t>(
               std::count(text.begin(),
                          text.begin() + static_cast<std::ptrdiff_t>(offset),
                          '\n'));
}

//---------------------------------------------------------------------------//
// Typed, line-anchored access to the parsed document
//---------------------------------------------------------------------------//
class Reader
{
  public:
    Reader(json const& doc, LineIndex const& lines, std::string origin)
        : doc_(doc), lines_(lines), origin_(std::move(origin))
    {
    }

    [[noreturn]] void fail(std::string const& path, std::string const& msg) const
    {
        std::string where = origin_;
        // fall back to the closest enclosing key with a known line
        std::string p = path;
        while (true)
        {
            auto it = lines_.find(p);
            if (it != lines_.end())
            {
                where += ":" + std::to_string(it->second);
                break;
            }
            auto const dot = p.rfind('.');
            if (dot == std::string::npos)
            {
                break;
            }
            p.erase(dot);
        }
        throw ConfigurationError(where + ": " + msg);
    }

    json const* find(std::string const& path) const
    {
        json const* node = &doc_;
        std::size_t start = 0;
        while (start <= path.size())
        {
            auto const dot = path.find('.', start);
            auto const key = path.substr(start, dot == std::string::npos
                                                    ? std::string::npos
                                                    : dot - start);
            if (!node->is_object() || !node->contains(key))
            {
                return nullptr;
            }
            node = &(*node)[key];
            if (dot == std::string::npos)
            {
                break;
            }
            start = dot + 1;
        }
        return node;
    }

    json const& object(std::string const& path) const
    {
        auto const* node = find(path);
        if (!node)
        {
            fail(parent(path), "missing required object '" + path + "'");
        }
        if (!node->is_object())
        {
            fail(path, "'" + path + "' must be an object");
        }
        return *node;
    }

    void only_keys(std::string const& path,
                   std::initializer_list<char const*> allowed) const
    {
        json const& node = path.empty() ? doc_ : object(path);
        for (auto const& [key, value] : node.items())
        {
            bool ok = false;
            for (auto const* a : allowed)
            {
                ok = ok || key == a;
            }
            if (!ok)
            {
                std::string const full = path.empty() ? key : path + "." + key;
                fail(full, "unknown key '" + full + "'");
            }
        }
    }

    double number(std::string const& path) const
    {
        auto const* node = find(path);
        if (!node)
        {
            fail(parent(path), "missing required number '" + path + "'");
        }
        if (!node->is_number())
        {
            fail(path, "'" + path + "' must be a number");
        }
        double const v = node->get<double>();
        if (!std::isfinite(v))
        {
            fail(path, "'" + path + "' must be finite");
        }
        return v;
    }

    double positive(std::string const& path) const
    {
        double const v = number(path);
        if (!(v > 0.0))
        {
            fail(path, "'" + path + "' must be positive");
        }
        return v;
    }

    double non_negative(std::string const& path) const
    {
        double const v = number(path);
        if (v < 0.0)
        {
            fail(path, "'" + path + "' must not be negative");
        }
        return v;
    }

    std::uint64_t count(std::string const& path) const
    {
        auto const* node = find(path);
        if (!node)
        {
            fail(parent(path), "missing required integer '" + path + "'");
        }
        if (!node->is_number_unsigned())
        {
            fail(path, "'" + path + "' must be a non-negative integer");
        }
        return node->get<std::uint64_t>();
    }

    std::string string(std::string const& path) const
    {
        auto const* node = find(path);
        if (!node)
        {
            fail(parent(path), "missing required string '" + path + "'");
        }
        if (!node->is_string())
        {
            fail(path, "'" + path + "' must be a string");
        }
        return node->get<std::string>();
    }

    bool has(std::string const& path) const { return find(path) != nullptr; }

  private:
    static std::string parent(std::string const& path)
    {
        auto const dot = path.rfind('.');
        return dot == std::string::npos ? std::string{} : path.substr(0, dot);
    }

    json const& doc_;
    LineIndex const& lines_;
    std::string origin_;
};
}  // namespace

char const* to_string(Units u)
{
    return u == Units::natural ? "natural" : "si";
}

Scenario parse_scenario(std::string const& text, std::string const& origin,
                        std::filesystem::path const& base_dir)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        // e.byte is one past the offending character
        std::size_t const at = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        if (auto const pos = msg.find("syntax error"); pos != std::string::npos)
        {
            msg = msg.substr(pos);
        }
        throw ConfigurationError(origin + ":" + std::to_string(line_of_offset(text, at))
                                 + ": " + msg);
    }

    LineIndex lines;
    std::size_t line = 0;
    KeyLines sax(&line, &lines);
    json::sax_parse(CountingIterator(text.data(), &line),
                    CountingIterator(text.data() + text.size(), &line), &sax);

    Reader r(doc, lines, origin);
    if (!doc.is_object())
    {
        r.fail("", "scenario must be a JSON object");
    }
    r.only_keys("", {"units", "constants", "bath", "particle", "model",
                     "quadrature", "monte_carlo", "description"});

    Scenario s;
    auto const units = r.string("units");
    if (units == "si")
    {
        s.units = Units::si;
        s.constants = PhysicalConstants{};
    }
    else if (units == "natural")
    {
        s.units = Units::natural;
        s.constants = PhysicalConstants::natural();
    }
    else
    {
        r.fail("units", "units must be \"si\" or \"natural\", got \"" + units + "\"");
    }

    if (r.has("constants"))
    {
        r.only_keys("constants", {"hbar", "k_boltzmann"});
        if (r.has("constants.hbar"))
        {
            s.constants.hbar = r.positive("constants.hbar");
        }
        if (r.has("constants.k_boltzmann"))
        {
            s.constants.k_boltzmann = r.positive("constants.k_boltzmann");
        }
    }

    r.object("bath");
    r.only_keys("bath", {"mass", "temperature", "density"});
    s.bath = BathParams(r.positive("bath.mass"), r.positive("bath.temperature"),
                        r.non_negative("bath.density"));

    r.object("particle");
    r.only_keys("particle", {"mass", "radius"});
    s.particle = ParticleParams(r.positive("particle.mass"),
                                r.positive("particle.radius"));

    r.object("model");
    auto const type = r.string("model.type");
    if (type == "hard_sphere")
    {
        r.only_keys("model", {"type"});
        s.model = ScatteringModel::hard_sphere(s.particle.radius());
        s.model_name = "hard_sphere";
    }
    else if (type == "tabulated")
    {
        r.only_keys("model", {"type", "file"});
        auto const file = r.string("model.file");
        std::filesystem::path path(file);
        if (path.is_relative())
        {
            path = base_dir / path;
        }
        try
        {
            s.model = load_tabulated_csv_file(path.string());
        }
        catch (std::exception const& e)
        {
            r.fail("model.file", e.what());
        }
        s.model_name = "tabulated:" + file;
    }
    else
    {
        r.fail("model.type",
               "model.type must be \"hard_sphere\" or \"tabulated\", got \""
                   + type + "\"");
    }

    if (r.has("quadrature"))
    {
        r.object("quadrature");
        r.only_keys("quadrature", {"rel_tol", "abs_tol", "max_subdivisions"});
        if (r.has("quadrature.rel_tol"))
        {
            s.quad.rel_tol = r.positive("quadrature.rel_tol");
        }
        if (r.has("quadrature.abs_tol"))
        {
            s.quad.abs_tol = r.positive("quadrature.abs_tol");
        }
        if (r.has("quadrature.max_subdivisions"))
        {
            s.quad.max_subdivisions = r.count("quadrature.max_subdivisions");
        }
    }

    if (r.has("monte_carlo"))
    {
        r.object("monte_carlo");
        r.only_keys("monte_carlo", {"samples", "seed"});
        s.has_mc = true;
        if (r.has("monte_carlo.samples"))
        {
            s.mc.n_samples = r.count("monte_carlo.samples");
            if (s.mc.n_samples == 0)
            {
                r.fail("monte_carlo.samples", "monte_carlo.samples must be positive");
            }
        }
        if (r.has("monte_carlo.seed"))
        {
            s.mc.seed = r.count("monte_carlo.seed");
        }
    }
    return s;
}

Scenario load_scenario(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ConfigurationError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string(), path.parent_path());
}

void write_scenario_header(std::ostream& os, Scenario const& s)
{
    auto line = [&](char const* key, double v) {
        os << "# " << key << ": " << format_number(v) << '\n';
    };
    os << "# units: " << to_string(s.units) << '\n';
    line("hbar", s.constants.hbar);
    line("k_boltzmann", s.constants.k_boltzmann);
    line("bath.mass", s.bath.mass());
    line("bath.temperature", s.bath.temperature());
    line("bath.density", s.bath.density());
    line("particle.mass", s.particle.mass());
    line("particle.radius", s.particle.radius());
    os << "# model: " << s.model_name << '\n';
    line("quadrature.rel_tol", s.quad.rel_tol);
    line("quadrature.abs_tol", s.quad.abs_tol);
    os << "# quadrature.max_subdivisions: " << s.quad.max_subdivisions << '\n';
    os << "# monte_carlo.samples: " << s.mc.n_samples << '\n';
    os << "# seed: " << s.mc.seed << '\n';
}

}  // namespace colldec::cli
