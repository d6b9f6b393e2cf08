#pragma once

#include <complex>
#include <vector>

#include "ctlti/types.hpp"

namespace ctlti {

/// Composite trapezoidal weights (already scaled by dt) for n uniform samples.
Vector trapezoid_weights(long n, double dt);

/// Gramian of a sampled row-signal matrix W (rows x samples) over its grid:
/// sum_i w_i W(:,i) W(:,i)^T with trapezoidal weights; symmetrized.
Matrix trapezoid_gramian(const Matrix& W, double dt);

struct RankDecision {
  int rank = 0;
  double gap_ratio = 0.0;  // ratio across the chosen cut (0 if full rank)
  bool by_gap = false;     // the gap rule decided, not the threshold
  bool ambiguous = false;  // adjacent singular values straddle the threshold
};

/// Numerical rank from a sorted singular-value list: the largest
/// adjacent-ratio gap decides when it exceeds gap_min, otherwise the
/// fallback threshold sigma_i > tol_rel * sigma_max applies. A decision is
/// ambiguous when two adjacent singular values both lie within a factor 10
/// of the threshold.
RankDecision numerical_rank(const Vector& singular_values, double tol_rel,
                            double gap_min = 1e6);

/// Same gap rule restricted to cut positions in [lo, hi] (1-based rank
/// candidates); used when the plausible rank range is known a priori.
RankDecision numerical_rank_windowed(const Vector& singular_values, int lo, int hi);

/// Orthonormal basis of the column space of a symmetric PSD matrix, using its
/// eigendecomposition truncated at the given rank.
Matrix psd_column_basis(const Matrix& S, int rank);

/// Best PSD approximation of S with the given rank (eigenvalue truncation).
Matrix psd_truncate(const Matrix& S, int rank);

/// Principal angles (radians, ascending) between the column spaces of two
/// orthonormal bases with the same column count.
std::vector<double> principal_angles(const Matrix& U1, const Matrix& U2);

/// Rank of the complex matrix s*E - A realized over the reals via the 2x2
/// rotation-block embedding [[a E - A, -b E], [b E, a E - A]] for s = a + ib.
/// The complex rank is the real rank divided by two.
int complex_pencil_rank(const Matrix& E, const Matrix& A, std::complex<double> s,
                        double tol_rel = 1e-10);

/// |det(sE - A)| at a complex point, via the realified embedding:
/// det_real = |det_complex|^2.
double complex_pencil_absdet(const Matrix& E, const Matrix& A, std::complex<double> s);

}  // namespace ctlti
