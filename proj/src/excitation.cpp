#include "ctlti/excitation.hpp"

#include <stdexcept>

#include "ctlti/numeric.hpp"
#include "ctlti/rng.hpp"
#include "ctlti/spline.hpp"

namespace ctlti {

namespace {

void validate(const SplineInputSpec& spec) {
  if (spec.m < 1) throw std::invalid_argument("SplineInputSpec: need at least one channel");
  if (spec.degree < 1) throw std::invalid_argument("SplineInputSpec: degree must be positive");
  if (spec.degree >= spec.knots)
    throw std::invalid_argument("SplineInputSpec: degree must be smaller than the knot count");
  if (!(spec.t_min < spec.t_max))
    throw std::invalid_argument("SplineInputSpec: empty time interval");
  if (!(spec.amplitude > 0.0))
    throw std::invalid_argument("SplineInputSpec: amplitude must be positive");
}

}  // namespace

AnalyticSignal spline_from_knot_values(const SplineInputSpec& spec, const Matrix& knot_values) {
  validate(spec);
  if (knot_values.rows() != spec.knots || knot_values.cols() != spec.m)
    throw std::invalid_argument("spline_from_knot_values: knot value shape mismatch");
  std::vector<double> sites(static_cast<std::size_t>(spec.knots));
  for (int j = 0; j < spec.knots; ++j)
    sites[static_cast<std::size_t>(j)] =
        spec.t_min + (spec.t_max - spec.t_min) * j / static_cast<double>(spec.knots - 1);
  AnalyticSignal out;
  out.channels.reserve(static_cast<std::size_t>(spec.m));
  for (int c = 0; c < spec.m; ++c) {
    std::vector<double> values(static_cast<std::size_t>(spec.knots));
    for (int j = 0; j < spec.knots; ++j) values[static_cast<std::size_t>(j)] = knot_values(j, c);
    out.channels.push_back(
        AnalyticChannel::piecewise(interpolating_spline(sites, values, spec.degree)));
  }
  return out;
}

AnalyticSignal generate_pe_spline(const SplineInputSpec& spec) {
  validate(spec);
  Matrix Y(spec.knots, spec.m);
  for (int c = 0; c < spec.m; ++c) {
    RandomStream rng(derive_seed(spec.seed, static_cast<std::uint64_t>(c), "spline-knots"));
    for (int j = 0; j < spec.knots; ++j) Y(j, c) = rng.uniform_sym(spec.amplitude);
  }
  return spline_from_knot_values(spec, Y);
}

PeResult pe_order(const std::vector<SampledSignal>& u_derivs, int k, double tol_pe) {
  if (k < 1) throw std::invalid_argument("pe_order: order must be >= 1");
  if (static_cast<int>(u_derivs.size()) != k)
    throw std::invalid_argument("pe_order: need derivative orders 0..k-1");
  const long S = u_derivs.front().samples();
  if (S < 2) throw std::invalid_argument("pe_order: empty interval");
  const int m = u_derivs.front().channels();

  Matrix V(static_cast<long>(k) * m, S);
  for (int j = 0; j < k; ++j)
    V.middleRows(static_cast<long>(j) * m, m) = u_derivs[static_cast<std::size_t>(j)].values;
  Matrix G = trapezoid_gramian(V, u_derivs.front().dt);

  PeResult res;
  const double dmax = G.diagonal().maxCoeff();
  for (long i = 0; i < G.rows(); ++i)
    if (!(G(i, i) > 1e-300 * std::max(dmax, 1.0))) return res;  // a component is identically zero
  Vector d = G.diagonal().cwiseSqrt().cwiseInverse();
  G = d.asDiagonal() * G * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  res.min_singular_value = std::max(es.eigenvalues().minCoeff(), 0.0);
  res.is_pe = res.min_singular_value > tol_pe;
  return res;
}

PeResult pe_order(const AnalyticSignal& u, int k, double t_min, double t_max, long samples,
                  double tol_pe) {
  if (!(t_min < t_max) || samples < 2) throw std::invalid_argument("pe_order: empty interval");
  const double dt = (t_max - t_min) / static_cast<double>(samples - 1);
  return pe_order(u.sample_derivatives(t_min, dt, samples, k - 1), k, tol_pe);
}

}  // namespace ctlti
