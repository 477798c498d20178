#pragma once

#include <stdexcept>
#include <string>

#include "colldec/estimate.hpp"

namespace colldec
{

/// Invalid parameters, grids, or run settings supplied by the caller.
class ConfigurationError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// An adaptive integration exhausted its subdivision budget. The best
/// estimate reached so far travels with the exception.
class NonConvergenceError : public std::runtime_error
{
  public:
    NonConvergenceError(std::string const& what, Estimate best)
        : std::runtime_error(what), best_(best)
    {
    }

    Estimate const& best_estimate() const noexcept { return best_; }

  private:
    Estimate best_;
};

}  // namespace colldec
