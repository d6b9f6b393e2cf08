#pragma once

#include <utility>
#include <vector>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Stacked derivative data W = col(u, ..., u^{(L-1)}, y, ..., y^{(L-1)}) on a
/// common uniform grid; row count L*(m+p).
struct DerivativeStack {
  int L = 0;
  int m = 0;
  int p = 0;
  double t0 = 0.0;
  double dt = 0.0;
  Matrix W;  // L*(m+p) x samples
};

/// The Gramian of a derivative stack with its block metadata.
struct DataGramian {
  Matrix Gamma;  // L*(m+p) x L*(m+p), symmetric PSD
  int L = 0;
  int m = 0;
  int p = 0;
};

/// The data-defined pencil s E0 - A0: E0 stacks the Gramian row blocks of
/// derivative orders 0..L-2 (u then y), A0 those of orders 1..L-1.
struct DataPencil {
  Matrix E0, A0;  // (L-1)*(m+p) x L*(m+p)
  int L = 0;
  int m = 0;
  int p = 0;
};

/// Assembles the stack from per-order sampled derivatives (orders ascending,
/// equal length for u and y, all on one grid).
DerivativeStack build_stack(const std::vector<SampledSignal>& u_derivs,
                            const std::vector<SampledSignal>& y_derivs);

/// Gamma = integral of W W^T by trapezoidal quadrature; symmetric PSD.
DataGramian build_gramian(const DerivativeStack& stack);

/// Row blocks (Gamma_{u^(k)}, Gamma_{y^(k)}) for k = 0..L-1.
std::vector<std::pair<Matrix, Matrix>> decompose_blocks(const DataGramian& g);

/// Builds (E0, A0) from the Gramian blocks and validates the construction
/// against the selector factorization s E0 - A0 = (s J1 - J2) Gamma.
DataPencil build_pencil(const DataGramian& g);

/// Selector matrices of the factorization (s J1 - J2) Gamma: J1 picks
/// derivative orders 0..L-2 of u then y, J2 picks orders 1..L-1.
std::pair<Matrix, Matrix> pencil_selectors(int L, int m, int p);

}  // namespace ctlti
