#pragma once

#include <cstdint>
#include <vector>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Random interpolating-spline input: per channel, a degree-`degree` spline
/// through knot values drawn i.i.d. from Unif([-amplitude, amplitude]) on the
/// uniform grid of `knots` points over [t_min, t_max].
struct SplineInputSpec {
  int m = 1;
  int degree = 7;
  int knots = 14;
  double t_min = 0.0;
  double t_max = 1.0;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed; channel i draws from the sub-stream
/// derive_seed(seed, i, "spline-knots").
AnalyticSignal generate_pe_spline(const SplineInputSpec& spec);

/// Spline through externally supplied knot values (knots x m, one column per
/// channel); the random generator above reduces to this.
AnalyticSignal spline_from_knot_values(const SplineInputSpec& spec, const Matrix& knot_values);

struct PeResult {
  double min_singular_value = 0.0;
  bool is_pe = false;
};

/// Persistency-of-excitation check of order k: forms the k*m Gramian of
/// col(u, ..., u^{(k-1)}) by trapezoidal quadrature, normalizes it per row by
/// signal energy and compares its least singular value against tol_pe.
/// u_derivs holds derivative orders 0..k-1 on a common grid.
PeResult pe_order(const std::vector<SampledSignal>& u_derivs, int k, double tol_pe = 1e-8);

/// Convenience overload sampling the derivatives of an analytic signal on a
/// uniform grid over [t_min, t_max].
PeResult pe_order(const AnalyticSignal& u, int k, double t_min, double t_max, long samples,
                  double tol_pe = 1e-8);

}  // namespace ctlti
