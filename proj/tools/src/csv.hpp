#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace colldec::cli
{

/// Shortest text that always round-trips: 17 significant digits, '.' as
/// decimal separator regardless of the global locale.
std::string format_number(double v);

/*!
 * Comma-separated rows with Unix newlines. Comment lines ("# ...") must be
 * written before the column names.
 */
class CsvWriter
{
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string const& text);
    void comment(std::string const& key, double value);
    void columns(std::initializer_list<char const*> names);
    void row(std::initializer_list<double> values);
    void row(std::vector<double> const& values);

  private:
    std::ostream& os_;
};

}  // namespace colldec::cli
