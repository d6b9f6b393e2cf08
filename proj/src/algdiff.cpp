#include "ctlti/algdiff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctlti {

double jacobi_eval(int degree, double alpha, double beta, double tau, int deriv) {
  if (degree < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  if (deriv < 0) throw std::invalid_argument("jacobi_eval: negative derivative order");
  if (deriv > 0) {
    if (deriv > degree) return 0.0;
    // d^k/dtau^k P_j^(a,b) = [prod_{i=1..k} (j+a+b+i)/2] P_{j-k}^(a+k,b+k)
    double factor = 1.0;
    for (int i = 1; i <= deriv; ++i) factor *= 0.5 * (degree + alpha + beta + i);
    return factor * jacobi_eval(degree - deriv, alpha + deriv, beta + deriv, tau, 0);
  }
  if (degree == 0) return 1.0;
  const double apb = alpha + beta;
  double pm1 = 1.0;
  double pc = 0.5 * ((apb + 2.0) * tau + (alpha - beta));
  for (int q = 2; q <= degree; ++q) {
    const double q2 = 2.0 * q + apb;
    const double denom = 2.0 * q * (q + apb) * (q2 - 2.0);
    const double aq = q2 * (q2 - 1.0) * (q2 - 2.0) / denom;
    const double bq = (q2 - 1.0) * (alpha * alpha - beta * beta) / denom;
    const double cq = 2.0 * (q + alpha - 1.0) * (q + beta - 1.0) * q2 / denom;
    const double next = (aq * tau + bq) * pc - cq * pm1;
    pm1 = pc;
    pc = next;
  }
  return pc;
}

double jacobi_norm_sq(int degree, double alpha, double beta) {
  // 2^(a+b+1) / (2j+a+b+1) * Gamma(j+a+1) Gamma(j+b+1) / (Gamma(j+a+b+1) j!)
  const double j = degree;
  const double log_norm = (alpha + beta + 1.0) * std::numbers::ln2 -
                          std::log(2.0 * j + alpha + beta + 1.0) +
                          std::lgamma(j + alpha + 1.0) + std::lgamma(j + beta + 1.0) -
                          std::lgamma(j + alpha + beta + 1.0) - std::lgamma(j + 1.0);
  return std::exp(log_norm);
}

namespace {

// g^{(n)}(tau) through the weight-product derivative identity
//   d^n/dnu^n [w_{a,b} P_j^(a,b)] = (-2)^n (j+1)...(j+n) w_{a-n,b-n} P_{j+n}^(a-n,b-n),
// combined with the chain rule for nu(tau) = 1 - 2 tau / T.
double kernel_derivative(const DifferentiatorSpec& spec, int order, double tau) {
  const double T = spec.window;
  const double nu = 1.0 - 2.0 * tau / T;
  if (nu <= -1.0 || nu >= 1.0) return 0.0;
  const double am = spec.alpha - order;
  const double bm = spec.beta - order;
  const double w = std::pow(1.0 - nu, am) * std::pow(1.0 + nu, bm);
  double acc = 0.0;
  for (int j = 0; j <= spec.expansion_order; ++j) {
    double rising = 1.0;
    for (int i = 1; i <= order; ++i) rising *= static_cast<double>(j + i);
    const double cj = jacobi_eval(j, spec.alpha, spec.beta, spec.theta) /
                      jacobi_norm_sq(j, spec.alpha, spec.beta);
    acc += cj * rising * jacobi_eval(j + order, am, bm, nu);
  }
  return (2.0 / T) * std::pow(4.0 / T, order) * w * acc;
}

}  // namespace

DifferentiatorKernel build_kernel(const DifferentiatorSpec& spec, int order, double dt) {
  if (order < 0) throw std::invalid_argument("build_kernel: negative order");
  if (!(spec.window > 0.0)) throw std::invalid_argument("build_kernel: window must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("build_kernel: dt must be positive");
  if (!(std::min(spec.alpha, spec.beta) > order - 1))
    throw std::invalid_argument("build_kernel: min(alpha, beta) must exceed order - 1");
  const long K = std::lround(spec.window / dt);
  if (K < 2) throw std::invalid_argument("build_kernel: window shorter than two samples");
  if (std::abs(K * dt - spec.window) > 0.5 * dt + 1e-12 * spec.window)
    throw std::invalid_argument("build_kernel: dt does not divide the window");

  Vector w = Vector::Ones(K + 1);
  w(0) = 0.5;
  w(K) = 0.5;
  DifferentiatorKernel kernel;
  kernel.order = order;
  kernel.dt = dt;
  kernel.taps = Vector(K + 1);
  for (long i = 0; i <= K; ++i)
    kernel.taps(i) = kernel_derivative(spec, order, i * dt) * w(i) * dt;

  // Delay: first moment of the order-0 kernel on the same grid.
  double delay = 0.0;
  if (order == 0) {
    for (long i = 0; i <= K; ++i) delay += (i * dt) * kernel.taps(i);
  } else {
    for (long i = 0; i <= K; ++i)
      delay += (i * dt) * kernel_derivative(spec, 0, i * dt) * w(i) * dt;
  }
  kernel.delay = delay;
  return kernel;
}

std::vector<SampledSignal> estimate_derivatives(const SampledSignal& signal,
                                                const DifferentiatorSpec& spec, int max_order) {
  std::vector<DifferentiatorKernel> kernels;
  for (int k = 0; k <= max_order; ++k) kernels.push_back(build_kernel(spec, k, signal.dt));
  const long K = kernels.front().length() - 1;
  if (signal.samples() <= K + 1)
    throw std::invalid_argument("estimate_derivatives: signal shorter than the window");

  const long S = signal.samples();
  const long out_n = S - K;
  const double t0 = signal.t0 + K * signal.dt - kernels.front().delay;
  std::vector<SampledSignal> out;
  out.reserve(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) {
    const Vector& taps = kernels[static_cast<std::size_t>(k)].taps;
    Matrix vals(signal.channels(), out_n);
    for (int c = 0; c < signal.channels(); ++c) {
      for (long t = 0; t < out_n; ++t) {
        double acc = 0.0;
        const long base = t + K;
        for (long i = 0; i <= K; ++i) acc += taps(i) * signal.values(c, base - i);
        vals(c, t) = acc;
      }
    }
    out.emplace_back(t0, signal.dt, std::move(vals));
  }
  return out;
}

std::vector<std::pair<double, double>> frequency_response(const DifferentiatorKernel& kernel,
                                                          int grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(grid));
  const long K = kernel.length();
  for (int k = 0; k < grid; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / grid;
    double re = 0.0, im = 0.0;
    for (long i = 0; i < K; ++i) {
      re += kernel.taps(i) * std::cos(ang * i);
      im -= kernel.taps(i) * std::sin(ang * i);
    }
    const double omega = ang / kernel.dt;  // rad/s on the DFT grid
    out.emplace_back(omega, std::hypot(re, im));
  }
  return out;
}

}  // namespace ctlti
