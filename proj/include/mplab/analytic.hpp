#pragma once

#include "mplab/smooth.hpp"

namespace mplab {

/// Registry of the closed-form functions used by the negative scenarios.
/// Trigonometric factors go through the pi-reduced evaluators, so traces on
/// faces at multiples of pi vanish exactly:
///   exp_sin_sin : u(x) = e^{x1} sin x2 sin x3         (dim 3)
///   xsq_sin     : u(x) = x2^2 sin x1                  (dim 2)
///   zero        : u == 0                              (any dim, dim field 0)
SmoothFnPtr analytic_function(const std::string& name);

std::vector<std::string> analytic_names();

}  // namespace mplab
