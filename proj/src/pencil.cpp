#include "ctlti/pencil.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ctlti/numeric.hpp"

namespace ctlti {

Matrix UnimodularEmbedding::permutation_matrix() const {
  const long c = E3.rows();
  Matrix P = Matrix::Zero(c, c);
  for (long i = 0; i < c; ++i) P(i, perm(i)) = 1.0;
  return P;
}

Matrix UnimodularEmbedding::completion_selector() const {
  const long c = E3.rows();
  const long extra = K_tilde.rows();
  const long r = c - extra;
  Matrix sel = Matrix::Zero(c, extra);
  for (long i = 0; i < c; ++i)
    if (perm(i) >= r) sel(i, perm(i) - r) = 1.0;
  return sel;
}

Matrix PolynomialMatrix::eval(double s) const {
  if (coeffs.empty()) return {};
  Matrix acc = coeffs.back();
  for (long k = static_cast<long>(coeffs.size()) - 2; k >= 0; --k)
    acc = acc * s + coeffs[static_cast<std::size_t>(k)];
  return acc;
}

StaircaseDecomposition staircase_reduce(const Matrix& E0, const Matrix& A0,
                                        const StaircaseOptions& options) {
  const long r = E0.rows();
  const long c = E0.cols();
  if (A0.rows() != r || A0.cols() != c)
    throw std::invalid_argument("staircase_reduce: E0 and A0 shapes differ");
  if (r > c) throw std::invalid_argument("staircase_reduce: requires r <= c");

  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = options.tol_rel >= 0.0 ? options.tol_rel
                                            : static_cast<double>(std::max(r, c)) * eps;

  StaircaseDecomposition sc;
  sc.Q = Matrix::Identity(r, r);
  sc.Z = Matrix::Identity(c, c);
  sc.E1 = E0;
  sc.A1 = A0;

  auto decide_rank = [&](const Vector& sv, const char* what, long stair) -> int {
    const RankDecision d = numerical_rank(sv, tol, options.gap_min);
    if (d.ambiguous) {
      std::ostringstream msg;
      msg << "stair " << stair << ": ambiguous " << what
          << " rank decision, gap ratio " << d.gap_ratio;
      sc.warnings.push_back(msg.str());
    }
    return d.rank;
  };

  long row_off = 0;
  long col_off = 0;
  long stair = 0;
  while (c - col_off > 0) {
    ++stair;
    const long ri = r - row_off;
    const long ci = c - col_off;
    if (ri == 0) {
      // Trailing zero-row stair absorbing the remaining columns.
      sc.block_rows.push_back(0);
      sc.block_cols.push_back(static_cast<int>(ci));
      col_off = c;
      break;
    }

    // Column compression of the current E block: kernel columns first.
    Eigen::JacobiSVD<Matrix> esvd(sc.E1.block(row_off, col_off, ri, ci),
                                  Eigen::ComputeThinU | Eigen::ComputeFullV);
    const int rank_e = std::min<long>(decide_rank(esvd.singularValues(), "E", stair), ri);
    const long gamma = ci - rank_e;
    if (gamma == 0) {
      sc.full_column_rank_remainder = true;
      break;
    }
    Matrix Zi(ci, ci);
    Zi.leftCols(gamma) = esvd.matrixV().rightCols(gamma);
    Zi.rightCols(rank_e) = esvd.matrixV().leftCols(rank_e);
    sc.E1.middleCols(col_off, ci) = sc.E1.middleCols(col_off, ci) * Zi;
    sc.A1.middleCols(col_off, ci) = sc.A1.middleCols(col_off, ci) * Zi;
    sc.Z.middleCols(col_off, ci) = sc.Z.middleCols(col_off, ci) * Zi;

    // Row compression of the exposed A block above the kernel columns.
    Eigen::JacobiSVD<Matrix> asvd(sc.A1.block(row_off, col_off, ri, gamma),
                                  Eigen::ComputeFullU | Eigen::ComputeThinV);
    const int rho = std::min<long>(decide_rank(asvd.singularValues(), "A", stair), ri);
    sc.E1.bottomRows(ri) = asvd.matrixU().transpose() * sc.E1.bottomRows(ri);
    sc.A1.bottomRows(ri) = asvd.matrixU().transpose() * sc.A1.bottomRows(ri);
    sc.Q.rightCols(ri) = sc.Q.rightCols(ri) * asvd.matrixU();

    // Column-pivoted QR pass: upper-trapezoidal stair block [T | X].
    if (rho > 0) {
      Eigen::ColPivHouseholderQR<Matrix> qr(sc.A1.block(row_off, col_off, rho, gamma));
      const Matrix Q2 = qr.householderQ() * Matrix::Identity(rho, rho);
      const auto P2 = qr.colsPermutation();
      sc.E1.middleCols(col_off, gamma) = sc.E1.middleCols(col_off, gamma) * P2;
      sc.A1.middleCols(col_off, gamma) = sc.A1.middleCols(col_off, gamma) * P2;
      sc.Z.middleCols(col_off, gamma) = sc.Z.middleCols(col_off, gamma) * P2;
      sc.E1.middleRows(row_off, rho) = Q2.transpose() * sc.E1.middleRows(row_off, rho);
      sc.A1.middleRows(row_off, rho) = Q2.transpose() * sc.A1.middleRows(row_off, rho);
      sc.Q.middleCols(row_off, rho) = sc.Q.middleCols(row_off, rho) * Q2;
    }

    sc.block_rows.push_back(rho);
    sc.block_cols.push_back(static_cast<int>(gamma));
    row_off += rho;
    col_off += gamma;
  }
  sc.deficient_rows = static_cast<int>(r - row_off);
  if (sc.full_column_rank_remainder) sc.deficient_rows = 0;
  return sc;
}

UnimodularEmbedding embed_unimodular(const StaircaseDecomposition& sc) {
  if (sc.full_column_rank_remainder)
    throw std::invalid_argument(
        "embed_unimodular: pencil has a full-column-rank E remainder (not embeddable)");
  if (sc.deficient_rows > 0)
    throw std::invalid_argument("embed_unimodular: pencil is row-rank deficient");
  const long r = sc.rows();
  const long c = sc.cols();
  const int k = sc.stairs();
  for (int i = 0; i < k; ++i)
    if (sc.block_rows[static_cast<std::size_t>(i)] > sc.block_cols[static_cast<std::size_t>(i)])
      throw std::invalid_argument("embed_unimodular: stair has more rows than columns");

  // Structurally cleaned copies: entries below the stairs are dropped.
  Matrix Ec = sc.E1;
  Matrix Ac = sc.A1;
  long ro = 0, co = 0;
  for (int i = 0; i < k; ++i) {
    const long rho = sc.block_rows[static_cast<std::size_t>(i)];
    const long gamma = sc.block_cols[static_cast<std::size_t>(i)];
    Ac.block(ro + rho, co, r - ro - rho, gamma).setZero();
    Ec.block(ro, co, r - ro, gamma).setZero();
    ro += rho;
    co += gamma;
  }

  UnimodularEmbedding emb;
  emb.Z = sc.Z;
  emb.block_rows = sc.block_rows;
  emb.block_cols = sc.block_cols;
  emb.K_tilde = Matrix::Zero(c - r, c);
  emb.perm = IndexVector(c);

  long ci = 0;  // completion row cursor
  ro = 0;
  co = 0;
  long pos = 0;
  for (int i = 0; i < k; ++i) {
    const long rho = sc.block_rows[static_cast<std::size_t>(i)];
    const long gamma = sc.block_cols[static_cast<std::size_t>(i)];
    for (long j = 0; j < rho; ++j) emb.perm(pos++) = static_cast<int>(ro + j);
    for (long j = 0; j < gamma - rho; ++j) {
      emb.K_tilde(ci + j, co + rho + j) = -1.0;
      emb.perm(pos++) = static_cast<int>(r + ci + j);
    }
    ro += rho;
    ci += gamma - rho;
    co += gamma;
  }

  Matrix E2 = Matrix::Zero(c, c);
  E2.topRows(r) = Ec;
  Matrix A2(c, c);
  A2.topRows(r) = Ac;
  A2.bottomRows(c - r) = -emb.K_tilde;
  emb.E3.resize(c, c);
  emb.A3.resize(c, c);
  for (long i = 0; i < c; ++i) {
    emb.E3.row(i) = E2.row(emb.perm(i));
    emb.A3.row(i) = A2.row(emb.perm(i));
  }

  const double diag_min = emb.A3.diagonal().cwiseAbs().minCoeff();
  if (!(diag_min > 0.0))
    throw std::invalid_argument("embed_unimodular: completed A3 has a zero diagonal entry");

  // Nilpotency index of N = E3 A3^{-1}, normalized for scale invariance.
  const Matrix N = emb.A3.triangularView<Eigen::Upper>()
                       .solve<Eigen::OnTheRight>(emb.E3);
  const double nn = N.norm();
  if (nn == 0.0) {
    emb.nilpotency_index = 1;
  } else {
    Matrix Nh = N / nn;
    Matrix power = Nh;
    int eta = 1;
    while (power.norm() > 1e-12 && eta <= k + 1) {
      power = power * Nh;
      ++eta;
    }
    emb.nilpotency_index = eta;
  }
  return emb;
}

PolynomialMatrix pencil_inverse(const UnimodularEmbedding& emb, int max_degree,
                                double lambda_reg) {
  const int eta = emb.nilpotency_index;
  if (max_degree < eta - 1)
    throw std::invalid_argument("pencil_inverse: max_degree below the nilpotency index");
  const long c = emb.A3.rows();

  Matrix A3inv;
  if (lambda_reg > 0.0) {
    A3inv = regularized_pinv(emb.A3, lambda_reg);
  } else {
    const double diag_min = emb.A3.diagonal().cwiseAbs().minCoeff();
    const double diag_max = emb.A3.diagonal().cwiseAbs().maxCoeff();
    if (!(diag_min > std::numeric_limits<double>::epsilon() * diag_max))
      throw std::runtime_error("pencil_inverse: A3 numerically singular; use regularization");
    A3inv = emb.A3.triangularView<Eigen::Upper>().solve(Matrix::Identity(c, c));
  }
  const Matrix N = emb.E3 * A3inv;

  PolynomialMatrix inv;
  inv.coeffs.reserve(static_cast<std::size_t>(max_degree) + 1);
  Matrix Npow = Matrix::Identity(c, c);
  for (int j = 0; j <= max_degree; ++j) {
    if (j < eta) {
      inv.coeffs.push_back(-A3inv * Npow);
      Npow = N * Npow;
    } else {
      inv.coeffs.push_back(Matrix::Zero(c, c));
    }
  }
  return inv;
}

Matrix regularized_pinv(const Matrix& A, double lambda_reg) {
  if (lambda_reg < 0.0) throw std::invalid_argument("regularized_pinv: negative lambda");
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s = svd.singularValues();
  for (long i = 0; i < s.size(); ++i) {
    const double denom = s(i) * s(i) + lambda_reg;
    s(i) = denom > 0.0 ? s(i) / denom : 0.0;
  }
  return svd.matrixV() * s.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace ctlti
