#include <doctest.h>

#include <numbers>

#include "ctlti/excitation.hpp"

using namespace ctlti;

namespace {

SplineInputSpec experiment_spec(std::uint64_t seed) {
  SplineInputSpec spec;
  spec.m = 1;
  spec.degree = 7;
  spec.knots = 14;
  spec.t_min = 0.0;
  spec.t_max = 3.0 * std::numbers::pi;
  spec.amplitude = 0.5;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("spline interpolates its own knot values") {
  SplineInputSpec spec = experiment_spec(5);
  spec.m = 2;
  Matrix Y(spec.knots, 2);
  for (int j = 0; j < spec.knots; ++j) {
    Y(j, 0) = std::sin(0.9 * j);
    Y(j, 1) = 0.1 * j - 0.5;
  }
  const AnalyticSignal u = spline_from_knot_values(spec, Y);
  for (int j = 0; j < spec.knots; ++j) {
    const double tj = spec.t_min + (spec.t_max - spec.t_min) * j / (spec.knots - 1);
    CHECK(u.channels[0].value(tj) == doctest::Approx(Y(j, 0)).epsilon(1e-9));
    CHECK(u.channels[1].value(tj) == doctest::Approx(Y(j, 1)).epsilon(1e-9));
  }
}

TEST_CASE("generation is deterministic per seed") {
  const AnalyticSignal a = generate_pe_spline(experiment_spec(11));
  const AnalyticSignal b = generate_pe_spline(experiment_spec(11));
  const AnalyticSignal c = generate_pe_spline(experiment_spec(12));
  const SampledSignal sa = a.sample(0.0, 0.01, 500);
  const SampledSignal sb = b.sample(0.0, 0.01, 500);
  const SampledSignal sc = c.sample(0.0, 0.01, 500);
  CHECK((sa.values - sb.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sa.values - sc.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("degree must stay below the knot count") {
  SplineInputSpec spec = experiment_spec(1);
  spec.degree = 14;
  CHECK_THROWS_AS(generate_pe_spline(spec), std::invalid_argument);
}

TEST_CASE("ramp is persistently exciting of order 2") {
  AnalyticSignal u;
  u.channels.push_back(AnalyticChannel::polynomial({0.0, 1.0}));  // u(t) = t
  const PeResult r = pe_order(u, 2, 0.0, 2.0, 2001);
  CHECK(r.is_pe);
}

TEST_CASE("the zero signal is never persistently exciting") {
  AnalyticSignal u;
  u.channels.push_back(AnalyticChannel::polynomial({0.0}));
  const PeResult r = pe_order(u, 1, 0.0, 1.0, 101);
  CHECK_FALSE(r.is_pe);
  CHECK(r.min_singular_value == doctest::Approx(0.0));
}

TEST_CASE("polynomial of degree d: PE of order d+1 but not d+2") {
  AnalyticSignal u;
  u.channels.push_back(AnalyticChannel::polynomial({0.3, -1.0, 0.25, 1.0}));  // cubic
  CHECK(pe_order(u, 4, 0.0, 2.0, 4001).is_pe);
  CHECK_FALSE(pe_order(u, 5, 0.0, 2.0, 4001).is_pe);
}

TEST_CASE("degree-7 splines pass the order-7 excitation check") {
  for (std::uint64_t seed : {101u, 202u, 303u, 404u, 505u}) {
    const AnalyticSignal u = generate_pe_spline(experiment_spec(seed));
    const PeResult r = pe_order(u, 7, 0.0, 3.0 * std::numbers::pi, 9425);
    CAPTURE(seed);
    CHECK(r.is_pe);
  }
}

TEST_CASE("pe_order rejects bad arguments") {
  AnalyticSignal u;
  u.channels.push_back(AnalyticChannel::sine(1.0, 1.0));
  CHECK_THROWS_AS(pe_order(u, 0, 0.0, 1.0, 101), std::invalid_argument);
  CHECK_THROWS_AS(pe_order(u, 2, 1.0, 1.0, 101), std::invalid_argument);
}
