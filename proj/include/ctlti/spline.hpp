#pragma once

#include <vector>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Interpolating B-spline of the given degree through (sites[i], values[i]),
/// returned in piecewise-polynomial form with exact derivatives up to the
/// degree. Sites must be strictly increasing and count > degree. Interior
/// knots follow the not-a-knot style placement for odd degrees: the middle
/// count-(degree+1) sites become single knots, so the spline is C^{degree-1}.
PiecewisePolynomial interpolating_spline(const std::vector<double>& sites,
                                         const std::vector<double>& values, int degree);

}  // namespace ctlti
