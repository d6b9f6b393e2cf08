#include "ctlti/gramian.hpp"

#include <cmath>
#include <stdexcept>

#include "ctlti/numeric.hpp"

namespace ctlti {

DerivativeStack build_stack(const std::vector<SampledSignal>& u_derivs,
                            const std::vector<SampledSignal>& y_derivs) {
  if (u_derivs.empty() || y_derivs.empty())
    throw std::invalid_argument("build_stack: empty derivative stack");
  if (u_derivs.size() != y_derivs.size())
    throw std::invalid_argument("build_stack: u and y must carry the same derivative orders");
  const int L = static_cast<int>(u_derivs.size());
  const int m = u_derivs.front().channels();
  const int p = y_derivs.front().channels();
  const long S = u_derivs.front().samples();
  const double t0 = u_derivs.front().t0;
  const double dt = u_derivs.front().dt;
  auto check = [&](const SampledSignal& s, int ch) {
    if (s.channels() != ch || s.samples() != S || std::abs(s.t0 - t0) > 1e-9 * std::max(1.0, std::abs(t0)) + 1e-12 ||
        std::abs(s.dt - dt) > 1e-12)
      throw std::invalid_argument("build_stack: derivative grids or channel counts differ");
  };
  for (const auto& s : u_derivs) check(s, m);
  for (const auto& s : y_derivs) check(s, p);

  DerivativeStack stack;
  stack.L = L;
  stack.m = m;
  stack.p = p;
  stack.t0 = t0;
  stack.dt = dt;
  stack.W.resize(static_cast<long>(L) * (m + p), S);
  for (int k = 0; k < L; ++k)
    stack.W.middleRows(static_cast<long>(k) * m, m) = u_derivs[static_cast<std::size_t>(k)].values;
  for (int k = 0; k < L; ++k)
    stack.W.middleRows(static_cast<long>(L) * m + static_cast<long>(k) * p, p) =
        y_derivs[static_cast<std::size_t>(k)].values;
  return stack;
}

DataGramian build_gramian(const DerivativeStack& stack) {
  if (stack.W.cols() < 2) throw std::invalid_argument("build_gramian: need at least 2 samples");
  DataGramian g;
  g.L = stack.L;
  g.m = stack.m;
  g.p = stack.p;
  g.Gamma = trapezoid_gramian(stack.W, stack.dt);
  return g;
}

std::vector<std::pair<Matrix, Matrix>> decompose_blocks(const DataGramian& g) {
  const long width = g.Gamma.cols();
  if (g.Gamma.rows() != width || width != static_cast<long>(g.L) * (g.m + g.p))
    throw std::invalid_argument("decompose_blocks: metadata inconsistent with Gamma");
  std::vector<std::pair<Matrix, Matrix>> blocks;
  blocks.reserve(static_cast<std::size_t>(g.L));
  for (int k = 0; k < g.L; ++k) {
    Matrix gu = g.Gamma.middleRows(static_cast<long>(k) * g.m, g.m);
    Matrix gy = g.Gamma.middleRows(static_cast<long>(g.L) * g.m + static_cast<long>(k) * g.p, g.p);
    blocks.emplace_back(std::move(gu), std::move(gy));
  }
  return blocks;
}

std::pair<Matrix, Matrix> pencil_selectors(int L, int m, int p) {
  const long rows = static_cast<long>(L - 1) * (m + p);
  const long cols = static_cast<long>(L) * (m + p);
  Matrix J1 = Matrix::Zero(rows, cols);
  Matrix J2 = Matrix::Zero(rows, cols);
  J1.topLeftCorner(static_cast<long>(L - 1) * m, static_cast<long>(L - 1) * m) =
      Matrix::Identity(static_cast<long>(L - 1) * m, static_cast<long>(L - 1) * m);
  J1.bottomRows(static_cast<long>(L - 1) * p)
      .middleCols(static_cast<long>(L) * m, static_cast<long>(L - 1) * p) =
      Matrix::Identity(static_cast<long>(L - 1) * p, static_cast<long>(L - 1) * p);
  J2.topRows(static_cast<long>(L - 1) * m).middleCols(m, static_cast<long>(L - 1) * m) =
      Matrix::Identity(static_cast<long>(L - 1) * m, static_cast<long>(L - 1) * m);
  J2.bottomRows(static_cast<long>(L - 1) * p)
      .middleCols(static_cast<long>(L) * m + p, static_cast<long>(L - 1) * p) =
      Matrix::Identity(static_cast<long>(L - 1) * p, static_cast<long>(L - 1) * p);
  return {std::move(J1), std::move(J2)};
}

DataPencil build_pencil(const DataGramian& g) {
  if (g.L < 2) throw std::invalid_argument("build_pencil: L must be at least 2");
  const auto blocks = decompose_blocks(g);
  DataPencil pencil;
  pencil.L = g.L;
  pencil.m = g.m;
  pencil.p = g.p;
  const long rows = static_cast<long>(g.L - 1) * (g.m + g.p);
  const long cols = static_cast<long>(g.L) * (g.m + g.p);
  pencil.E0.resize(rows, cols);
  pencil.A0.resize(rows, cols);
  for (int k = 0; k < g.L - 1; ++k) {
    pencil.E0.middleRows(static_cast<long>(k) * g.m, g.m) = blocks[static_cast<std::size_t>(k)].first;
    pencil.A0.middleRows(static_cast<long>(k) * g.m, g.m) =
        blocks[static_cast<std::size_t>(k) + 1].first;
    pencil.E0.middleRows(static_cast<long>(g.L - 1) * g.m + static_cast<long>(k) * g.p, g.p) =
        blocks[static_cast<std::size_t>(k)].second;
    pencil.A0.middleRows(static_cast<long>(g.L - 1) * g.m + static_cast<long>(k) * g.p, g.p) =
        blocks[static_cast<std::size_t>(k) + 1].second;
  }
  // Selector-factorization consistency: s E0 - A0 = (s J1 - J2) Gamma.
  const auto [J1, J2] = pencil_selectors(g.L, g.m, g.p);
  const double err = ((J1 * g.Gamma - pencil.E0).cwiseAbs().maxCoeff() +
                      (J2 * g.Gamma - pencil.A0).cwiseAbs().maxCoeff());
  if (!(err <= 1e-12 * (1.0 + g.Gamma.cwiseAbs().maxCoeff())))
    throw std::logic_error("build_pencil: selector factorization check failed");
  return pencil;
}

}  // namespace ctlti
