#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace ctlti::oracles {

SampledSignal simulate_zoh_expm(const StateSpaceModel& model, const SampledSignal& u,
                                const Vector& x0, int refine) {
  const int n = model.n;
  const int m = model.m;
  const double h = u.dt / refine;
  Matrix block = Matrix::Zero(n + m, n + m);
  block.topLeftCorner(n, n) = model.A;
  block.topRightCorner(n, m) = model.B;
  const Matrix EM = (block * h).exp();
  const Matrix Ad = EM.topLeftCorner(n, n);
  const Matrix Bd = EM.topRightCorner(n, m);

  Matrix xs(n, u.samples());
  Vector x = x0;
  xs.col(0) = x;
  for (long i = 0; i + 1 < u.samples(); ++i) {
    const Vector u0 = u.values.col(i);
    const Vector u1 = u.values.col(i + 1);
    for (int s = 0; s < refine; ++s) {
      const double frac = (s + 0.5) / refine;
      x = Ad * x + Bd * (u0 + frac * (u1 - u0));
    }
    xs.col(i + 1) = x;
  }
  return SampledSignal(u.t0, u.dt, std::move(xs));
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) throw std::invalid_argument("simpson: intervals must be even");
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double jacobi_inner_quadrature(int i, int j, double alpha, double beta, int intervals) {
  auto f = [&](double x) {
    const double w = std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta);
    return w * jacobi_eval(i, alpha, beta, x) * jacobi_eval(j, alpha, beta, x);
  };
  return simpson(f, -1.0, 1.0, intervals);
}

namespace {

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

// d^r/dnu^r (1-nu)^a and d^r/dnu^r (1+nu)^b factors.
double pow_minus_deriv(double a, int r, double nu) {
  double factor = 1.0;
  for (int q = 0; q < r; ++q) factor *= -(a - q);
  return factor * std::pow(1.0 - nu, a - r);
}

double pow_plus_deriv(double b, int r, double nu) {
  double factor = 1.0;
  for (int q = 0; q < r; ++q) factor *= (b - q);
  return factor * std::pow(1.0 + nu, b - r);
}

double weight_deriv(double alpha, double beta, int order, double nu) {
  double acc = 0.0;
  for (int r = 0; r <= order; ++r)
    acc += binomial(order, r) * pow_minus_deriv(alpha, r, nu) *
           pow_plus_deriv(beta, order - r, nu);
  return acc;
}

}  // namespace

double kernel_derivative_leibniz(const DifferentiatorSpec& spec, int order, double tau) {
  const double T = spec.window;
  const double nu = 1.0 - 2.0 * tau / T;
  if (nu <= -1.0 || nu >= 1.0) return 0.0;
  double acc = 0.0;
  for (int j = 0; j <= spec.expansion_order; ++j) {
    const double cj = jacobi_eval(j, spec.alpha, spec.beta, spec.theta) /
                      jacobi_norm_sq(j, spec.alpha, spec.beta);
    double dprod = 0.0;
    for (int i = 0; i <= order; ++i)
      dprod += binomial(order, i) * weight_deriv(spec.alpha, spec.beta, i, nu) *
               jacobi_eval(j, spec.alpha, spec.beta, nu, order - i);
    acc += cj * dprod;
  }
  return (2.0 / T) * std::pow(-2.0 / T, order) * acc;
}

}  // namespace ctlti::oracles
