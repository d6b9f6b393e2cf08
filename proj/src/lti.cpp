#include "ctlti/lti.hpp"

#include <stdexcept>

namespace ctlti {

StateSpaceModel::StateSpaceModel(Matrix A_, Matrix B_, Matrix C_, Matrix D_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
  n = static_cast<int>(A.rows());
  m = static_cast<int>(B.cols());
  p = static_cast<int>(C.rows());
  if (A.cols() != n) throw std::invalid_argument("StateSpaceModel: A must be square");
  if (B.rows() != n) throw std::invalid_argument("StateSpaceModel: B row count != n");
  if (C.cols() != n) throw std::invalid_argument("StateSpaceModel: C column count != n");
  if (D.rows() != p || D.cols() != m)
    throw std::invalid_argument("StateSpaceModel: D must be p x m");
  if (n < 1 || m < 1 || p < 1) throw std::invalid_argument("StateSpaceModel: empty dimensions");
}

std::pair<SampledSignal, SampledSignal> simulate(const StateSpaceModel& model,
                                                 const SampledSignal& u, const Vector& x0,
                                                 int substeps) {
  if (u.channels() != model.m)
    throw std::invalid_argument("simulate: input channel count does not match the model");
  if (x0.size() != model.n) throw std::invalid_argument("simulate: x0 size mismatch");
  if (substeps < 1) throw std::invalid_argument("simulate: substeps must be >= 1");

  const long S = u.samples();
  const double h = u.dt / substeps;
  Matrix xs(model.n, S);
  Vector x = x0;
  xs.col(0) = x;
  Vector k1(model.n), k2(model.n), k3(model.n), k4(model.n), uin(model.m);
  for (long i = 0; i + 1 < S; ++i) {
    const Vector u0 = u.values.col(i);
    const Vector du = (u.values.col(i + 1) - u0) / u.dt;
    for (int s = 0; s < substeps; ++s) {
      const double tau = s * h;
      auto f = [&](const Vector& xx, double tloc) -> Vector {
        uin = u0 + du * tloc;
        return model.A * xx + model.B * uin;
      };
      k1 = f(x, tau);
      k2 = f(x + 0.5 * h * k1, tau + 0.5 * h);
      k3 = f(x + 0.5 * h * k2, tau + 0.5 * h);
      k4 = f(x + h * k3, tau + h);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    xs.col(i + 1) = x;
  }
  Matrix ys = model.C * xs + model.D * u.values;
  return {SampledSignal(u.t0, u.dt, std::move(xs)), SampledSignal(u.t0, u.dt, std::move(ys))};
}

Matrix observability_matrix(const StateSpaceModel& model, int k) {
  if (k < 1) throw std::invalid_argument("observability_matrix: k must be >= 1");
  Matrix O(static_cast<long>(k) * model.p, model.n);
  Matrix row = model.C;
  for (int i = 0; i < k; ++i) {
    O.middleRows(static_cast<long>(i) * model.p, model.p) = row;
    if (i + 1 < k) row = row * model.A;
  }
  return O;
}

int lag(const StateSpaceModel& model) {
  for (int k = 1; k <= model.n; ++k) {
    Eigen::ColPivHouseholderQR<Matrix> qr(observability_matrix(model, k));
    if (qr.rank() == model.n) return k;
  }
  throw std::invalid_argument("lag: model is unobservable");
}

Matrix markov_toeplitz(const StateSpaceModel& model, int k) {
  Matrix T = Matrix::Zero(static_cast<long>(k) * model.p, static_cast<long>(k - 1) * model.m);
  // First column of blocks: D, CB, CAB, CA^2 B, ...; shifted copies below.
  std::vector<Matrix> markov;
  markov.push_back(model.D);
  Matrix CAk = model.C;
  for (int i = 1; i < k; ++i) {
    markov.push_back(CAk * model.B);
    CAk = CAk * model.A;
  }
  for (int j = 0; j < k - 1; ++j)
    for (int i = j; i < k; ++i)
      T.block(static_cast<long>(i) * model.p, static_cast<long>(j) * model.m, model.p, model.m) =
          markov[static_cast<std::size_t>(i - j)];
  return T;
}

SampledSignal reconstruct_state(const StateSpaceModel& model,
                                const std::vector<SampledSignal>& u_derivs,
                                const std::vector<SampledSignal>& y_derivs) {
  if (model.p != 1)
    throw std::invalid_argument("reconstruct_state: single-output models only");
  const int n = model.n;
  if (static_cast<int>(y_derivs.size()) != n)
    throw std::invalid_argument("reconstruct_state: need y derivative orders 0..n-1");
  if (static_cast<int>(u_derivs.size()) != std::max(n - 1, 0))
    throw std::invalid_argument("reconstruct_state: need u derivative orders 0..n-2");
  const long S = y_derivs.front().samples();
  const double t0 = y_derivs.front().t0;
  const double dt = y_derivs.front().dt;
  for (const auto& s : y_derivs)
    if (s.samples() != S || std::abs(s.t0 - t0) > 1e-9 || std::abs(s.dt - dt) > 1e-12)
      throw std::invalid_argument("reconstruct_state: y stack grids differ");
  for (const auto& s : u_derivs)
    if (s.samples() != S || std::abs(s.t0 - t0) > 1e-9 || std::abs(s.dt - dt) > 1e-12)
      throw std::invalid_argument("reconstruct_state: u stack grids differ");

  const Matrix O = observability_matrix(model, n);
  Eigen::FullPivLU<Matrix> lu(O);
  if (!lu.isInvertible())
    throw std::invalid_argument("reconstruct_state: observability matrix is singular");
  const Matrix T = markov_toeplitz(model, n);

  Matrix ycol(n, S);
  for (int k = 0; k < n; ++k) ycol.row(k) = y_derivs[static_cast<std::size_t>(k)].values.row(0);
  Matrix rhs = ycol;
  if (n > 1) {
    Matrix ucol(static_cast<long>(n - 1) * model.m, S);
    for (int k = 0; k < n - 1; ++k)
      ucol.middleRows(static_cast<long>(k) * model.m, model.m) =
          u_derivs[static_cast<std::size_t>(k)].values;
    rhs -= T * ucol;
  }
  Matrix xs = lu.solve(rhs);
  return SampledSignal(t0, dt, std::move(xs));
}

std::vector<SampledSignal> output_derivative_stack(const StateSpaceModel& model,
                                                   const SampledSignal& x,
                                                   const std::vector<SampledSignal>& u_derivs,
                                                   int max_order) {
  if (static_cast<int>(u_derivs.size()) < max_order + 1)
    throw std::invalid_argument("output_derivative_stack: not enough input derivative orders");
  std::vector<SampledSignal> out;
  Matrix xk = x.values;
  for (int k = 0; k <= max_order; ++k) {
    Matrix yk = model.C * xk + model.D * u_derivs[static_cast<std::size_t>(k)].values;
    out.emplace_back(x.t0, x.dt, std::move(yk));
    if (k < max_order)
      xk = model.A * xk + model.B * u_derivs[static_cast<std::size_t>(k)].values;
  }
  return out;
}

}  // namespace ctlti
