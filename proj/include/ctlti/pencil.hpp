#pragma once

#include <string>
#include <vector>

#include "ctlti/types.hpp"

namespace ctlti {

struct StaircaseOptions {
  /// Relative singular-value threshold per compression; < 0 selects the
  /// default max(r, c) * machine epsilon.
  double tol_rel = -1.0;
  /// A rank cut is taken at the largest adjacent singular-value gap when its
  /// ratio reaches this value; otherwise the threshold rule decides.
  double gap_min = 1e6;
};

/// Orthogonal equivalence Q^T (s E0 - A0) Z = s E1 - A1 in staircase form:
/// block upper-triangular with full-row-rank upper-trapezoidal diagonal
/// A-blocks (of sizes block_rows[i] x block_cols[i]) and full-column-rank
/// superdiagonal E-blocks. E1/A1 store the exact transformed matrices; the
/// entries below the stairs are zero only to within the rank tolerance.
struct StaircaseDecomposition {
  Matrix Q, Z, E1, A1;
  std::vector<int> block_rows;  // rho_i
  std::vector<int> block_cols;  // gamma_i
  std::vector<std::string> warnings;
  /// Rows not absorbed into any stair (nonzero for row-rank-deficient pencils).
  int deficient_rows = 0;
  /// True when the reduction stopped on a full-column-rank E block (the
  /// pencil has structure the unimodular embedding cannot handle).
  bool full_column_rank_remainder = false;

  long rows() const { return E1.rows(); }
  long cols() const { return E1.cols(); }
  int stairs() const { return static_cast<int>(block_cols.size()); }
};

/// Square unimodular completion s E3 - A3 = P (s E2 - A2) of a staircase,
/// where E2 = [E1; 0], A2 = [A1; -K_tilde], K_tilde = -diag(K_1, ..., K_k)
/// and P interleaves each completion K_i directly beneath its stair. A3 is
/// upper-triangular and invertible; N = E3 A3^{-1} is nilpotent with index
/// `nilpotency_index`.
struct UnimodularEmbedding {
  Matrix E3, A3;
  Matrix K_tilde;    // (c - r) x c, in staircase column coordinates
  Matrix Z;          // column transform carried over from the staircase
  IndexVector perm;  // E3.row(i) == E2.row(perm(i))
  int nilpotency_index = 0;
  std::vector<int> block_rows, block_cols;

  Matrix permutation_matrix() const;
  /// Columns of P [0; I]: selector mapping latent channels to the embedded
  /// rows that carry the completions.
  Matrix completion_selector() const;
};

/// Real polynomial matrix M(s) = sum_k coeffs[k] s^k.
struct PolynomialMatrix {
  std::vector<Matrix> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long rows() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }
  long cols() const { return coeffs.empty() ? 0 : coeffs.front().cols(); }
  Matrix eval(double s) const;
};

/// Rank-revealing staircase reduction by alternating SVD column compressions
/// of E and row compressions of the exposed A block, with a column-pivoted QR
/// pass that leaves each diagonal A-block upper-trapezoidal. Requires r <= c.
StaircaseDecomposition staircase_reduce(const Matrix& E0, const Matrix& A0,
                                        const StaircaseOptions& options = {});

/// Builds the constant completion and the interleaving permutation. Throws if
/// the staircase is deficient (leftover rows or a full-column-rank E
/// remainder).
UnimodularEmbedding embed_unimodular(const StaircaseDecomposition& sc);

/// Polynomial inverse (s E3 - A3)^{-1} = -A3^{-1} sum_j s^j N^j truncated at
/// the nilpotency index and zero-padded to max_degree. With lambda_reg == 0
/// the inverse of A3 is exact back-substitution; otherwise the Tikhonov
/// regularized pseudo-inverse replaces it (and N uses the same inverse).
PolynomialMatrix pencil_inverse(const UnimodularEmbedding& emb, int max_degree,
                                double lambda_reg = 0.0);

/// V diag(s_i / (s_i^2 + lambda)) U^T for A = U diag(s_i) V^T.
Matrix regularized_pinv(const Matrix& A, double lambda_reg);

}  // namespace ctlti
