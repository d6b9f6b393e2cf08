#include "ctlti/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctlti {
namespace {

// Index of the knot span containing t: largest i with knots[i] <= t and
// knots[i] < knots[i+1], restricted to the valid basis range.
long find_span(const std::vector<double>& knots, int degree, double t) {
  const long n = static_cast<long>(knots.size()) - degree - 2;  // last basis index
  long lo = degree;
  long hi = n + 1;
  if (t >= knots[static_cast<std::size_t>(hi)]) return n;
  if (t <= knots[static_cast<std::size_t>(lo)]) return lo;
  while (lo + 1 < hi) {
    const long mid = (lo + hi) / 2;
    if (t < knots[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

// Cox-de Boor: the degree+1 basis values N_{span-degree..span} at t.
std::vector<double> basis_funs(const std::vector<double>& knots, int degree, long span, double t) {
  std::vector<double> N(static_cast<std::size_t>(degree) + 1, 0.0);
  std::vector<double> left(static_cast<std::size_t>(degree) + 1, 0.0);
  std::vector<double> right(static_cast<std::size_t>(degree) + 1, 0.0);
  N[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[static_cast<std::size_t>(j)] = t - knots[static_cast<std::size_t>(span + 1 - j)];
    right[static_cast<std::size_t>(j)] = knots[static_cast<std::size_t>(span + j)] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double den = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double temp = den != 0.0 ? N[static_cast<std::size_t>(r)] / den : 0.0;
      N[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    N[static_cast<std::size_t>(j)] = saved;
  }
  return N;
}

double eval_bspline(const std::vector<double>& knots, const Vector& coef, int degree, double t) {
  const long span = find_span(knots, degree, t);
  const auto N = basis_funs(knots, degree, span, t);
  double acc = 0.0;
  for (int r = 0; r <= degree; ++r) acc += N[static_cast<std::size_t>(r)] * coef(span - degree + r);
  return acc;
}

// Derivative spline: degree drops by one, knots lose one at each end.
void derivative_spline(std::vector<double>& knots, Vector& coef, int& degree) {
  const long n = coef.size();
  Vector dcoef(n - 1);
  for (long i = 0; i < n - 1; ++i) {
    const double den = knots[static_cast<std::size_t>(i + degree + 1)] - knots[static_cast<std::size_t>(i + 1)];
    dcoef(i) = den != 0.0 ? degree * (coef(i + 1) - coef(i)) / den : 0.0;
  }
  knots.erase(knots.begin());
  knots.pop_back();
  coef = std::move(dcoef);
  degree -= 1;
}

}  // namespace

PiecewisePolynomial interpolating_spline(const std::vector<double>& sites,
                                         const std::vector<double>& values, int degree) {
  const long n = static_cast<long>(sites.size());
  if (degree < 1) throw std::invalid_argument("interpolating_spline: degree must be >= 1");
  if (n != static_cast<long>(values.size()))
    throw std::invalid_argument("interpolating_spline: sites/values size mismatch");
  if (n <= degree)
    throw std::invalid_argument("interpolating_spline: need more sites than the degree");
  for (long i = 1; i < n; ++i)
    if (!(sites[static_cast<std::size_t>(i)] > sites[static_cast<std::size_t>(i - 1)]))
      throw std::invalid_argument("interpolating_spline: sites must increase");

  // Clamped knot vector with interior knots at the middle sites.
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(n + degree + 1));
  for (int i = 0; i <= degree; ++i) knots.push_back(sites.front());
  const long head = (degree + 1) / 2;
  for (long i = head; i < n - degree - 1 + head; ++i)
    knots.push_back(sites[static_cast<std::size_t>(i)]);
  for (int i = 0; i <= degree; ++i) knots.push_back(sites.back());

  // Collocation system B c = y.
  Matrix B = Matrix::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    const double t = sites[static_cast<std::size_t>(i)];
    const long span = find_span(knots, degree, t);
    const auto N = basis_funs(knots, degree, span, t);
    for (int r = 0; r <= degree; ++r) B(i, span - degree + r) = N[static_cast<std::size_t>(r)];
  }
  Eigen::PartialPivLU<Matrix> lu(B);
  Vector y(n);
  for (long i = 0; i < n; ++i) y(i) = values[static_cast<std::size_t>(i)];
  Vector coef = lu.solve(y);
  const double resid = (B * coef - y).cwiseAbs().maxCoeff();
  const double scale = 1.0 + y.cwiseAbs().maxCoeff();
  if (!(resid < 1e-8 * scale))
    throw std::runtime_error("interpolating_spline: collocation system is singular");

  // Convert to piecewise-polynomial form: Taylor coefficients at each break,
  // obtained by evaluating the derivative splines at the interval's left edge.
  std::vector<double> breaks;
  breaks.push_back(sites.front());
  for (std::size_t i = static_cast<std::size_t>(degree) + 1; i + degree + 1 < knots.size(); ++i)
    if (knots[i] > breaks.back()) breaks.push_back(knots[i]);
  if (sites.back() > breaks.back()) breaks.push_back(sites.back());

  const int intervals = static_cast<int>(breaks.size()) - 1;
  Matrix coeffs = Matrix::Zero(degree + 1, intervals);
  std::vector<double> dknots = knots;
  Vector dcoef = coef;
  int ddeg = degree;
  double fact = 1.0;
  for (int j = 0; j <= degree; ++j) {
    if (j > 0) fact *= j;
    for (int i = 0; i < intervals; ++i)
      coeffs(j, i) = eval_bspline(dknots, dcoef, ddeg, breaks[static_cast<std::size_t>(i)]) / fact;
    if (j < degree) derivative_spline(dknots, dcoef, ddeg);
  }
  return PiecewisePolynomial(std::move(breaks), std::move(coeffs));
}

}  // namespace ctlti
