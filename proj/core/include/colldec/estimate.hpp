#pragma once

#include <cstddef>

namespace colldec
{

/// Result of a numerical integration: value, error estimate (>= 0), and the
/// number of integrand evaluations (or samples) spent.
struct Estimate
{
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

}  // namespace colldec
