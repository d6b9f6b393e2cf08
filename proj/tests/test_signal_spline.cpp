#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctlti/rng.hpp"
#include "ctlti/signal.hpp"
#include "ctlti/spline.hpp"

using namespace ctlti;

TEST_CASE("analytic channel derivatives") {
  AnalyticChannel c;
  c.add_sine(2.0, 3.0, 0.25).add_cosine(0.5, 1.5).add_poly(4.0, 3);
  const double t = 0.7;
  // derivative by central differences
  const double h = 1e-6;
  for (int k = 1; k <= 3; ++k) {
    const double fd = (c.value(t + h, k - 1) - c.value(t - h, k - 1)) / (2 * h);
    CHECK(c.value(t, k) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(c.value(t, 4) == doctest::Approx(2.0 * 81.0 * std::sin(3 * t + 0.25) +
                                         0.5 * std::pow(1.5, 4) *
                                             std::cos(1.5 * t))
                             .epsilon(1e-12));
}

TEST_CASE("time shift identity") {
  AnalyticChannel c;
  c.add_sine(1.0, 2.0, 0.3).add_poly(2.0, 2).add_poly(-1.0, 0);
  const AnalyticChannel s = c.shifted(0.4);
  for (double t : {-1.0, 0.0, 0.55, 2.3})
    for (int k : {0, 1, 2}) CHECK(s.value(t, k) == doctest::Approx(c.value(t + 0.4, k)).epsilon(1e-10));
}

TEST_CASE("interpolating spline reproduces polynomials") {
  // A degree-3 interpolant through samples of a cubic is that cubic.
  std::vector<double> sites, values;
  auto poly = [](double t) { return 0.5 * t * t * t - 2.0 * t * t + t - 3.0; };
  for (int i = 0; i < 10; ++i) {
    sites.push_back(0.3 * i);
    values.push_back(poly(0.3 * i));
  }
  const PiecewisePolynomial pp = interpolating_spline(sites, values, 3);
  for (double t = 0.0; t <= 2.7; t += 0.17) {
    CHECK(pp.value(t) == doctest::Approx(poly(t)).epsilon(1e-9));
    CHECK(pp.value(t, 1) == doctest::Approx(1.5 * t * t - 4.0 * t + 1.0).epsilon(1e-8));
  }
}

TEST_CASE("degree-7 spline interpolates and is C^6") {
  RandomStream rng(99);
  std::vector<double> sites, values;
  const int N = 14;
  for (int i = 0; i < N; ++i) {
    sites.push_back(3.0 * std::numbers::pi * i / (N - 1));
    values.push_back(rng.uniform_sym(1.0));
  }
  const PiecewisePolynomial pp = interpolating_spline(sites, values, 7);
  for (int i = 0; i < N; ++i)
    CHECK(pp.value(sites[static_cast<std::size_t>(i)]) ==
          doctest::Approx(values[static_cast<std::size_t>(i)]).epsilon(1e-9));
  // continuity of derivatives 0..6 across every break
  const auto& breaks = pp.breaks();
  for (std::size_t b = 1; b + 1 < breaks.size(); ++b) {
    const double e = 1e-9;
    for (int k = 0; k <= 6; ++k) {
      const double left = pp.value(breaks[b] - e, k);
      const double right = pp.value(breaks[b] + e, k);
      CHECK(left == doctest::Approx(right).epsilon(1e-4));
    }
  }
}

TEST_CASE("spline of zeros is zero") {
  std::vector<double> sites{0.0, 1.0};
  std::vector<double> values{0.0, 0.0};
  const PiecewisePolynomial pp = interpolating_spline(sites, values, 1);
  for (double t : {0.0, 0.25, 0.5, 1.0}) CHECK(pp.value(t) == doctest::Approx(0.0));
}

TEST_CASE("spline input validation") {
  std::vector<double> sites{0.0, 1.0, 2.0};
  std::vector<double> values{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(interpolating_spline(sites, values, 3), std::invalid_argument);
  CHECK_THROWS_AS(interpolating_spline({0.0, 0.0, 1.0}, values, 1), std::invalid_argument);
}

TEST_CASE("sampled signal invariants") {
  CHECK_THROWS_AS(SampledSignal(0.0, -1.0, Matrix::Zero(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(SampledSignal(0.0, 0.1, Matrix::Zero(1, 0)), std::invalid_argument);
  SampledSignal s(1.0, 0.5, Matrix::Zero(2, 3));
  CHECK(s.time(2) == doctest::Approx(2.0));
}
