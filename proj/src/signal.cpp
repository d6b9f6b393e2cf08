#include "ctlti/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctlti {

SampledSignal::SampledSignal(double t0_, double dt_, Matrix values_)
    : t0(t0_), dt(dt_), values(std::move(values_)) {
  if (dt <= 0.0) throw std::invalid_argument("SampledSignal: dt must be positive");
  if (values.cols() < 1) throw std::invalid_argument("SampledSignal: need at least one sample");
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks, Matrix coeffs)
    : breaks_(std::move(breaks)), coeffs_(std::move(coeffs)) {
  if (breaks_.size() != static_cast<std::size_t>(coeffs_.cols()) + 1)
    throw std::invalid_argument("PiecewisePolynomial: breaks/coeffs mismatch");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1]))
      throw std::invalid_argument("PiecewisePolynomial: breaks must increase");
}

double PiecewisePolynomial::value(double t, int order) const {
  if (breaks_.empty()) return 0.0;
  if (order > degree()) return 0.0;
  t = std::clamp(t, breaks_.front(), breaks_.back());
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  long idx = std::distance(breaks_.begin(), it) - 1;
  idx = std::clamp<long>(idx, 0, intervals() - 1);
  const double x = t - breaks_[static_cast<std::size_t>(idx)];
  // Horner on the order-th derivative of the local polynomial.
  double acc = 0.0;
  for (int j = degree(); j >= order; --j) {
    double fall = 1.0;
    for (int q = 0; q < order; ++q) fall *= static_cast<double>(j - q);
    acc = acc * x + coeffs_(j, idx) * fall;
    if (j == order) break;
  }
  return acc;
}

AnalyticChannel AnalyticChannel::sine(double amplitude, double omega, double phase) {
  AnalyticChannel c;
  c.add_sine(amplitude, omega, phase);
  return c;
}

AnalyticChannel AnalyticChannel::cosine(double amplitude, double omega, double phase) {
  AnalyticChannel c;
  c.add_cosine(amplitude, omega, phase);
  return c;
}

AnalyticChannel AnalyticChannel::polynomial(std::vector<double> coeffs_low_to_high) {
  AnalyticChannel c;
  for (std::size_t k = 0; k < coeffs_low_to_high.size(); ++k)
    if (coeffs_low_to_high[k] != 0.0) c.add_poly(coeffs_low_to_high[k], static_cast<int>(k));
  return c;
}

AnalyticChannel AnalyticChannel::piecewise(PiecewisePolynomial pp) {
  AnalyticChannel c;
  c.pieces_.push_back(std::move(pp));
  return c;
}

AnalyticChannel& AnalyticChannel::add_sine(double amplitude, double omega, double phase) {
  trig_.push_back({amplitude, omega, phase});
  return *this;
}

AnalyticChannel& AnalyticChannel::add_cosine(double amplitude, double omega, double phase) {
  trig_.push_back({amplitude, omega, phase + std::numbers::pi / 2.0});
  return *this;
}

AnalyticChannel& AnalyticChannel::add_poly(double coeff, int power) {
  if (power < 0) throw std::invalid_argument("AnalyticChannel: negative power");
  poly_.push_back({coeff, power});
  return *this;
}

double AnalyticChannel::value(double t, int order) const {
  double acc = 0.0;
  const double half_pi = std::numbers::pi / 2.0;
  for (const auto& tt : trig_) {
    // d^k/dt^k a sin(wt+p) = a w^k sin(wt + p + k pi/2)
    acc += tt.amplitude * std::pow(tt.omega, order) *
           std::sin(tt.omega * t + tt.phase + order * half_pi);
  }
  for (const auto& pt : poly_) {
    if (order > pt.power) continue;
    double fall = 1.0;
    for (int q = 0; q < order; ++q) fall *= static_cast<double>(pt.power - q);
    acc += pt.coeff * fall * std::pow(t, pt.power - order);
  }
  for (const auto& pp : pieces_) acc += pp.value(t, order);
  return acc;
}

int AnalyticChannel::smoothness() const {
  int s = std::numeric_limits<int>::max();
  for (const auto& pp : pieces_) s = std::min(s, pp.degree() - 1);
  return s;
}

AnalyticChannel AnalyticChannel::shifted(double delta) const {
  AnalyticChannel out;
  for (const auto& tt : trig_)
    out.trig_.push_back({tt.amplitude, tt.omega, tt.phase + tt.omega * delta});
  for (const auto& pt : poly_) {
    // (t+d)^p re-expanded by the binomial theorem
    double binom = 1.0;
    for (int j = pt.power; j >= 0; --j) {
      out.poly_.push_back({pt.coeff * binom * std::pow(delta, pt.power - j), j});
      binom = binom * j / static_cast<double>(pt.power - j + 1);
    }
  }
  for (const auto& pp : pieces_) {
    std::vector<double> breaks = pp.breaks();
    for (auto& b : breaks) b -= delta;
    Matrix coeffs(pp.degree() + 1, pp.intervals());
    for (int i = 0; i < pp.intervals(); ++i) {
      const double left = pp.breaks()[static_cast<std::size_t>(i)];
      for (int j = 0; j <= pp.degree(); ++j) {
        double fact = 1.0;
        for (int q = 2; q <= j; ++q) fact *= q;
        coeffs(j, i) = pp.value(left, j) / fact;
      }
    }
    out.pieces_.emplace_back(std::move(breaks), std::move(coeffs));
  }
  return out;
}

int AnalyticSignal::smoothness() const {
  int s = std::numeric_limits<int>::max();
  for (const auto& c : channels) s = std::min(s, c.smoothness());
  return s;
}

AnalyticSignal AnalyticSignal::shifted(double delta) const {
  AnalyticSignal out;
  out.channels.reserve(channels.size());
  for (const auto& c : channels) out.channels.push_back(c.shifted(delta));
  return out;
}

SampledSignal AnalyticSignal::sample(double t0, double dt, long n, int order) const {
  Matrix vals(channel_count(), n);
  for (int c = 0; c < channel_count(); ++c)
    for (long i = 0; i < n; ++i)
      vals(c, i) = channels[static_cast<std::size_t>(c)].value(t0 + i * dt, order);
  return SampledSignal(t0, dt, std::move(vals));
}

std::vector<SampledSignal> AnalyticSignal::sample_derivatives(double t0, double dt, long n,
                                                              int max_order) const {
  std::vector<SampledSignal> out;
  out.reserve(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) out.push_back(sample(t0, dt, n, k));
  return out;
}

}  // namespace ctlti
