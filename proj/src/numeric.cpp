#include "ctlti/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctlti {

Vector trapezoid_weights(long n, double dt) {
  if (n < 2) throw std::invalid_argument("trapezoid_weights: need at least 2 samples");
  Vector w = Vector::Constant(n, dt);
  w(0) = 0.5 * dt;
  w(n - 1) = 0.5 * dt;
  return w;
}

Matrix trapezoid_gramian(const Matrix& W, double dt) {
  const Vector w = trapezoid_weights(W.cols(), dt);
  Matrix G = (W * w.asDiagonal()) * W.transpose();
  return 0.5 * (G + G.transpose());
}

RankDecision numerical_rank(const Vector& sv, double tol_rel, double gap_min) {
  RankDecision d;
  const long q = sv.size();
  if (q == 0 || sv(0) <= 0.0) return d;
  const double thresh = tol_rel * sv(0);
  int r_tol = 0;
  for (long i = 0; i < q; ++i)
    if (sv(i) > thresh) ++r_tol;

  double best = 0.0;
  int cut = -1;
  for (long i = 0; i + 1 < q; ++i) {
    const double ratio = sv(i + 1) > 0.0 ? sv(i) / sv(i + 1)
                                         : std::numeric_limits<double>::infinity();
    if (ratio > best) {
      best = ratio;
      cut = static_cast<int>(i) + 1;
    }
  }
  if (cut > 0 && best >= gap_min && cut < r_tol) {
    d.rank = cut;
    d.gap_ratio = best;
    d.by_gap = true;
  } else {
    d.rank = r_tol;
    d.gap_ratio = (r_tol > 0 && r_tol < q && sv(r_tol) > 0.0) ? sv(r_tol - 1) / sv(r_tol) : 0.0;
  }
  for (long i = 0; i + 1 < q; ++i) {
    const bool a = sv(i) > thresh / 10.0 && sv(i) < thresh * 10.0;
    const bool b = sv(i + 1) > thresh / 10.0 && sv(i + 1) < thresh * 10.0;
    if (a && b) {
      d.ambiguous = true;
      break;
    }
  }
  return d;
}

RankDecision numerical_rank_windowed(const Vector& sv, int lo, int hi) {
  RankDecision d;
  const long q = sv.size();
  lo = std::max(lo, 1);
  hi = std::min(hi, static_cast<int>(q) - 1);
  if (q == 0 || sv(0) <= 0.0 || hi < lo) return d;
  double best = -1.0;
  for (int r = lo; r <= hi; ++r) {
    const double ratio = sv(r) > 0.0 ? sv(r - 1) / sv(r)
                                     : std::numeric_limits<double>::infinity();
    if (ratio > best) {
      best = ratio;
      d.rank = r;
    }
  }
  d.gap_ratio = best;
  d.by_gap = true;
  return d;
}

Matrix psd_column_basis(const Matrix& S, int rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const long nn = S.rows();
  Matrix U(nn, rank);
  for (int j = 0; j < rank; ++j) U.col(j) = es.eigenvectors().col(nn - 1 - j);
  return U;
}

Matrix psd_truncate(const Matrix& S, int rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const long nn = S.rows();
  Matrix out = Matrix::Zero(nn, nn);
  for (int j = 0; j < rank; ++j) {
    const long idx = nn - 1 - j;
    out += es.eigenvalues()(idx) * es.eigenvectors().col(idx) * es.eigenvectors().col(idx).transpose();
  }
  return 0.5 * (out + out.transpose());
}

std::vector<double> principal_angles(const Matrix& U1, const Matrix& U2) {
  if (U1.cols() != U2.cols())
    throw std::invalid_argument("principal_angles: subspace dimensions differ");
  Eigen::JacobiSVD<Matrix> svd(U1.transpose() * U2);
  std::vector<double> angles;
  for (long i = svd.singularValues().size() - 1; i >= 0; --i) {
    const double c = std::clamp(svd.singularValues()(i), -1.0, 1.0);
    angles.push_back(std::acos(c));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

namespace {

Matrix realify(const Matrix& E, const Matrix& A, std::complex<double> s) {
  const long r = E.rows(), c = E.cols();
  Matrix R(2 * r, 2 * c);
  const Matrix re = s.real() * E - A;
  const Matrix im = s.imag() * E;
  R.topLeftCorner(r, c) = re;
  R.topRightCorner(r, c) = -im;
  R.bottomLeftCorner(r, c) = im;
  R.bottomRightCorner(r, c) = re;
  return R;
}

}  // namespace

int complex_pencil_rank(const Matrix& E, const Matrix& A, std::complex<double> s,
                        double tol_rel) {
  Eigen::JacobiSVD<Matrix> svd(realify(E, A, s));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > tol_rel * sv(0)) ++r;
  return r / 2;
}

double complex_pencil_absdet(const Matrix& E, const Matrix& A, std::complex<double> s) {
  if (E.rows() != E.cols())
    throw std::invalid_argument("complex_pencil_absdet: pencil must be square");
  const double det_real = realify(E, A, s).determinant();
  return std::sqrt(std::abs(det_real));
}

}  // namespace ctlti
