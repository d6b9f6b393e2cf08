#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctlti/algdiff.hpp"
#include "ctlti/rng.hpp"
#include "oracles.hpp"

using namespace ctlti;

namespace {

DifferentiatorSpec paper_spec(double dt, double factor = 84.0) {
  DifferentiatorSpec s;
  s.alpha = 8.0;
  s.beta = 8.0;
  s.expansion_order = 0;
  s.window = factor * dt;
  s.theta = 0.0;
  return s;
}

SampledSignal sample_fn(double (*f)(double), double t0, double dt, long n) {
  Matrix v(1, n);
  for (long i = 0; i < n; ++i) v(0, i) = f(t0 + i * dt);
  return SampledSignal(t0, dt, std::move(v));
}

}  // namespace

TEST_CASE("jacobi basics") {
  CHECK(jacobi_eval(0, 3.0, 5.0, 0.37) == doctest::Approx(1.0));
  CHECK(jacobi_eval(1, 8.0, 8.0, 0.0) == doctest::Approx(0.0));
  // P_1^(a,b)(x) = ((a+b+2)x + (a-b))/2
  CHECK(jacobi_eval(1, 2.0, 5.0, 0.3) == doctest::Approx((9.0 * 0.3 - 3.0) / 2.0));
}

TEST_CASE("jacobi orthogonality against quadrature") {
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      const double q = oracles::jacobi_inner_quadrature(i, j, 8.0, 8.0);
      if (i == j)
        CHECK(q == doctest::Approx(jacobi_norm_sq(i, 8.0, 8.0)).epsilon(1e-8));
      else
        CHECK(std::abs(q) < 1e-10);
    }
  // asymmetric parameters as well
  CHECK(oracles::jacobi_inner_quadrature(2, 2, 6.0, 9.0) ==
        doctest::Approx(jacobi_norm_sq(2, 6.0, 9.0)).epsilon(1e-8));
  CHECK(std::abs(oracles::jacobi_inner_quadrature(1, 3, 6.0, 9.0)) < 1e-10);
}

TEST_CASE("jacobi derivative identity against finite differences") {
  const double h = 1e-6;
  for (int j : {1, 2, 4}) {
    const double fd =
        (jacobi_eval(j, 8.0, 8.0, 0.31 + h) - jacobi_eval(j, 8.0, 8.0, 0.31 - h)) / (2 * h);
    CHECK(jacobi_eval(j, 8.0, 8.0, 0.31, 1) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("kernel samples match the Leibniz-expansion oracle") {
  DifferentiatorSpec spec = paper_spec(1e-3);
  spec.expansion_order = 2;
  spec.theta = 0.4;
  for (int order : {0, 1, 2}) {
    const DifferentiatorKernel k = build_kernel(spec, order, 1e-3);
    const long K = k.length() - 1;
    for (long i : {K / 7, K / 3, K / 2, 3 * K / 4}) {
      const double direct = k.taps(i) / 1e-3 / (i == 0 || i == K ? 0.5 : 1.0);
      const double oracle = oracles::kernel_derivative_leibniz(spec, order, i * 1e-3);
      CHECK(direct == doctest::Approx(oracle).epsilon(1e-10));
    }
  }
}

TEST_CASE("order-0 kernel has unit DC gain and symmetric delay") {
  const DifferentiatorKernel k = build_kernel(paper_spec(1e-3), 0, 1e-3);
  CHECK(k.taps.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(k.delay == doctest::Approx(0.5 * 84.0 * 1e-3).epsilon(1e-8));
}

TEST_CASE("derivative kernels annihilate constants") {
  for (int order : {1, 2}) {
    const DifferentiatorKernel k = build_kernel(paper_spec(1e-3), order, 1e-3);
    CHECK(std::abs(k.taps.sum()) < 1e-10);
  }
}

TEST_CASE("norm closed form cross-checked by quadrature (dual route)") {
  for (int j : {0, 1, 2, 5}) {
    const double closed = jacobi_norm_sq(j, 8.0, 8.0);
    const double quad = oracles::jacobi_inner_quadrature(j, j, 8.0, 8.0);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("affine signals are differentiated exactly") {
  const double dt = 1e-3;
  const SampledSignal f = sample_fn([](double t) { return t; }, 0.0, dt, 3000);
  const auto est = estimate_derivatives(f, paper_spec(dt), 1);
  // order 1 of f(t) = t is exactly 1 after delay compensation
  for (long i = 0; i < est[1].samples(); i += 97)
    CHECK(est[1].values(0, i) == doctest::Approx(1.0).epsilon(1e-6));
  // order 0 reproduces the delayed ramp
  for (long i = 0; i < est[0].samples(); i += 97)
    CHECK(est[0].values(0, i) == doctest::Approx(est[0].time(i)).epsilon(1e-6));
}

TEST_CASE("constants pass through order 0 and vanish at order 1") {
  const double dt = 1e-3;
  const SampledSignal f = sample_fn([](double) { return 3.25; }, 0.0, dt, 500);
  const auto est = estimate_derivatives(f, paper_spec(dt), 1);
  CHECK((est[0].values.array() - 3.25).abs().maxCoeff() < 1e-10);
  CHECK(est[1].values.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("sine derivatives at the experiment filter settings") {
  const double dt = 1e-3;
  const long S = static_cast<long>(3.0 * std::numbers::pi / dt) + 1;
  const SampledSignal f = sample_fn([](double t) { return std::sin(t); }, 0.0, dt, S);
  const auto est = estimate_derivatives(f, paper_spec(dt), 2);
  double e0 = 0.0, e1 = 0.0, e2 = 0.0;
  for (long i = 0; i < est[0].samples(); ++i) {
    const double t = est[0].time(i);
    e0 = std::max(e0, std::abs(est[0].values(0, i) - std::sin(t)));
    e1 = std::max(e1, std::abs(est[1].values(0, i) - std::cos(t)));
    e2 = std::max(e2, std::abs(est[2].values(0, i) + std::sin(t)));
  }
  // convergence-study bounds at T = 84 t_s (same thresholds as the acceptance run)
  CHECK(e0 < 1e-4);
  CHECK(e1 < 1e-3);
  CHECK(e2 < 1e-2);
}

TEST_CASE("polynomial exactness at expansion order N") {
  const double dt = 5e-4;
  DifferentiatorSpec spec = paper_spec(dt, 120.0);
  spec.expansion_order = 2;
  const SampledSignal f =
      sample_fn([](double t) { return 3.0 * t * t - 2.0 * t + 1.0; }, 0.0, dt, 2000);
  const auto est = estimate_derivatives(f, spec, 0);
  for (long i = 0; i < est[0].samples(); i += 53) {
    const double t = est[0].time(i);
    CHECK(est[0].values(0, i) == doctest::Approx(3.0 * t * t - 2.0 * t + 1.0).epsilon(1e-8));
  }
}

TEST_CASE("commutation: order-k estimate equals order-0 filter of the derivative") {
  const double dt = 1e-3;
  const long S = 4000;
  const SampledSignal f = sample_fn([](double t) { return std::sin(1.7 * t); }, 0.0, dt, S);
  const SampledSignal fd = sample_fn([](double t) { return 1.7 * std::cos(1.7 * t); }, 0.0, dt, S);
  const auto est_f = estimate_derivatives(f, paper_spec(dt), 1);
  const auto est_fd = estimate_derivatives(fd, paper_spec(dt), 0);
  CHECK((est_f[1].values - est_fd[0].values).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("frequency response has no zero interval") {
  const DifferentiatorKernel k = build_kernel(paper_spec(1e-3), 0, 1e-3);
  const auto fr = frequency_response(k, 4096);
  int consecutive = 0;
  int worst = 0;
  for (const auto& [w, mag] : fr) {
    consecutive = mag <= 1e-12 ? consecutive + 1 : 0;
    worst = std::max(worst, consecutive);
  }
  CHECK(worst <= 1);  // isolated dips only
}

TEST_CASE("the averaging kernel attenuates white noise") {
  const DifferentiatorKernel k = build_kernel(paper_spec(1e-3), 0, 1e-3);
  CHECK(k.taps.squaredNorm() < 1.0);  // variance gain of an i.i.d. sequence
}

TEST_CASE("estimation demands a long enough record") {
  const SampledSignal f = sample_fn([](double) { return 1.0; }, 0.0, 1e-3, 50);
  CHECK_THROWS_AS(estimate_derivatives(f, paper_spec(1e-3), 0), std::invalid_argument);
}

TEST_CASE("kernel design rejects too-low weight exponents") {
  DifferentiatorSpec spec = paper_spec(1e-3);
  spec.alpha = 1.0;
  spec.beta = 1.0;
  CHECK_THROWS_AS(build_kernel(spec, 3, 1e-3), std::invalid_argument);
}
