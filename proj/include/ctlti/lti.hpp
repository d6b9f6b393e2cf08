#pragma once

#include <utility>
#include <vector>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Continuous-time LTI system x' = Ax + Bu, y = Cx + Du.
struct StateSpaceModel {
  Matrix A, B, C, D;
  int n = 0, m = 0, p = 0;

  StateSpaceModel() = default;
  StateSpaceModel(Matrix A_, Matrix B_, Matrix C_, Matrix D_);
};

/// Fixed-step classical RK4 with `substeps` internal steps per sample interval;
/// the input is interpolated linearly between its samples. Returns (x, y) on
/// the grid of u, with y_i = C x_i + D u_i.
std::pair<SampledSignal, SampledSignal> simulate(const StateSpaceModel& model,
                                                 const SampledSignal& u, const Vector& x0,
                                                 int substeps = 10);

/// col(C, CA, ..., CA^{k-1}), shape (k*p) x n.
Matrix observability_matrix(const StateSpaceModel& model, int k);

/// Smallest k with rank(observability_matrix(k)) == n; throws if unobservable.
int lag(const StateSpaceModel& model);

/// Lower block-triangular Toeplitz matrix of Markov parameters mapping
/// col(u, u', ..., u^{(k-2)}) into col(y, y', ..., y^{(k-1)}): D blocks on the
/// diagonal, CA^{i-j-1}B below.
Matrix markov_toeplitz(const StateSpaceModel& model, int k);

/// Pointwise state reconstruction from input/output derivative jets:
/// x = O_n^{-1} (col(y, ..., y^{(n-1)}) - T col(u, ..., u^{(n-2)})).
/// u_derivs holds orders 0..n-2 (may be empty when n == 1), y_derivs holds
/// orders 0..n-1, all on one common grid. Requires p == 1 and O_n invertible.
SampledSignal reconstruct_state(const StateSpaceModel& model,
                                const std::vector<SampledSignal>& u_derivs,
                                const std::vector<SampledSignal>& y_derivs);

/// Output derivative stack y^{(k)} = C x^{(k)} + D u^{(k)} with
/// x^{(k+1)} = A x^{(k)} + B u^{(k)}, from a simulated state trajectory and the
/// exact input derivative stack (orders 0..max_order). Benchmarking helper: it
/// needs the true model.
std::vector<SampledSignal> output_derivative_stack(const StateSpaceModel& model,
                                                   const SampledSignal& x,
                                                   const std::vector<SampledSignal>& u_derivs,
                                                   int max_order);

}  // namespace ctlti
