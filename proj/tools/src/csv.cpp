#include "csv.hpp"

#include <locale>
#include <ostream>
#include <sstream>

namespace colldec::cli
{

std::string format_number(double v)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss.precision(17);
    ss << v;
    return ss.str();
}

void CsvWriter::comment(std::string const& text)
{
    os_ << "# " << text << '\n';
}

void CsvWriter::comment(std::string const& key, double value)
{
    os_ << "# " << key << ": " << format_number(value) << '\n';
}

void CsvWriter::columns(std::initializer_list<char const*> names)
{
    char const* sep = "";
    for (auto const* n : names)
    {
        os_ << sep << n;
        sep = ",";
    }
    os_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values)
{
    row(std::vector<double>(values));
}

void CsvWriter::row(std::vector<double> const& values)
{
    char const* sep = "";
    for (double v : values)
    {
        os_ << sep << format_number(v);
        sep = ",";
    }
    os_ << '\n';
}

}  // namespace colldec::cli
