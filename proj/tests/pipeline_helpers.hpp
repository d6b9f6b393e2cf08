#pragma once

// Shared fixtures for pipeline-level tests: the demo plant driven by a random
// degree-7 spline over [0, 3*pi], with exact derivative stacks.

#include <numbers>
#include <utility>
#include <vector>

#include "ctlti/excitation.hpp"
#include "ctlti/experiment.hpp"
#include "ctlti/gramian.hpp"
#include "ctlti/lti.hpp"

namespace ctlti::testing {

struct ExperimentData {
  StateSpaceModel model;
  AnalyticSignal u_analytic;
  SampledSignal u, x, y;
  std::vector<SampledSignal> u_derivs, y_derivs;  // exact, orders 0..L-1
};

inline ExperimentData make_experiment_data(std::uint64_t seed, int L, double dt = 1e-3,
                                           double amplitude = 0.5) {
  ExperimentData d;
  d.model = demo_system();
  SplineInputSpec spec;
  spec.m = 1;
  spec.degree = 7;
  spec.knots = 14;
  spec.t_min = 0.0;
  spec.t_max = 3.0 * std::numbers::pi;
  spec.amplitude = amplitude;
  spec.seed = seed;
  d.u_analytic = generate_pe_spline(spec);
  const long S = static_cast<long>(std::floor((spec.t_max - spec.t_min) / dt)) + 1;
  d.u_derivs = d.u_analytic.sample_derivatives(spec.t_min, dt, S, L - 1);
  d.u = d.u_derivs.front();
  auto [xs, ys] = simulate(d.model, d.u, Vector::Zero(3));
  d.x = std::move(xs);
  d.y = std::move(ys);
  d.y_derivs = output_derivative_stack(d.model, d.x, d.u_derivs, L - 1);
  return d;
}

inline DataGramian make_gramian(std::uint64_t seed, int L) {
  const ExperimentData d = make_experiment_data(seed, L);
  return build_gramian(build_stack(d.u_derivs, d.y_derivs));
}

}  // namespace ctlti::testing
