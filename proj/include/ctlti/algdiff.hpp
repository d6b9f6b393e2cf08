#pragma once

#include <vector>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Design parameters of the Jacobi-weight differentiator kernel
///   g(tau) = (2/T) w(nu(tau)) sum_j [P_j(theta)/||P_j||_w^2] P_j(nu(tau)),
/// nu(tau) = 1 - 2 tau/T, w(nu) = (1-nu)^alpha (1+nu)^beta on (-1, 1).
struct DifferentiatorSpec {
  double alpha = 8.0;
  double beta = 8.0;
  int expansion_order = 0;  // N
  double window = 0.084;    // T, seconds
  double theta = 0.0;       // delay parameter in [-1, 1]
};

/// Discretized convolution taps of g^{(order)}: taps[i] = g^{(order)}(i*dt)
/// times the trapezoidal weight and dt. delay is the first moment of the
/// order-0 kernel, measured by quadrature.
struct DifferentiatorKernel {
  int order = 0;
  double dt = 0.0;
  double delay = 0.0;
  Vector taps;

  long length() const { return taps.size(); }
};

/// Value of the deriv-th derivative of the Jacobi polynomial P_j^(alpha,beta)
/// at tau, via the three-term recurrence and the derivative identity
/// d/dtau P_j^(a,b) = ((j+a+b+1)/2) P_{j-1}^(a+1,b+1).
double jacobi_eval(int degree, double alpha, double beta, double tau, int deriv = 0);

/// ||P_j||_w^2 in closed form (Gamma functions).
double jacobi_norm_sq(int degree, double alpha, double beta);

/// Samples the analytic derivative g^{(order)} on [0, T] at spacing dt and
/// applies trapezoidal weights. Requires min(alpha, beta) > order - 1 so the
/// weight's boundary factors vanish analytically at the window ends.
DifferentiatorKernel build_kernel(const DifferentiatorSpec& spec, int order, double dt);

/// Estimates derivative orders 0..max_order of every channel by FIR
/// convolution with the order-n kernels. The first (kernel length - 1)
/// samples are discarded (the window overhangs the data start) and the time
/// axis is shifted by the common delay, so all orders share one grid of
/// delay-compensated times.
std::vector<SampledSignal> estimate_derivatives(const SampledSignal& signal,
                                                const DifferentiatorSpec& spec, int max_order);

/// Magnitude of the kernel's frequency response on a uniform DFT grid of the
/// given size (zero-padded); returns (frequency [rad/s], |Fg|) pairs.
std::vector<std::pair<double, double>> frequency_response(const DifferentiatorKernel& kernel,
                                                          int grid = 4096);

}  // namespace ctlti
