#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <functional>

#include "ctlti/algdiff.hpp"
#include "ctlti/lti.hpp"
#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti::oracles {

/// Zero-order-hold matrix-exponential integrator: the input is held at the
/// midpoint of each refinement step (sampled from the same linear
/// interpolation simulate() uses), the step map comes from the exponential of
/// the Van Loan block [[A, B], [0, 0]]. Independent of the RK4 path.
SampledSignal simulate_zoh_expm(const StateSpaceModel& model, const SampledSignal& u,
                                const Vector& x0, int refine);

/// Composite Simpson quadrature on [a, b] (intervals must be even).
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

/// Jacobi inner product <P_i, P_j>_w by high-resolution quadrature.
double jacobi_inner_quadrature(int i, int j, double alpha, double beta, int intervals = 20000);

/// g^{(order)}(tau) assembled with the Leibniz product rule on w(nu) * P_j(nu)
/// (weight derivatives expanded termwise), an independent route to the
/// kernel-derivative samples used by build_kernel.
double kernel_derivative_leibniz(const DifferentiatorSpec& spec, int order, double tau);

}  // namespace ctlti::oracles
