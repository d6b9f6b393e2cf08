#pragma once

#include <limits>
#include <vector>

#include "ctlti/types.hpp"

namespace ctlti {

/// Uniformly sampled multichannel signal. Sample i lives at t0 + i*dt; there is
/// no timestamp array.
struct SampledSignal {
  double t0 = 0.0;
  double dt = 0.0;
  Matrix values;  // channels x samples

  SampledSignal() = default;
  SampledSignal(double t0_, double dt_, Matrix values_);

  int channels() const { return static_cast<int>(values.rows()); }
  long samples() const { return values.cols(); }
  double time(long i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return time(samples() - 1); }
};

/// a * sin(omega*t + phase). Cosines are sines with phase shifted by pi/2;
/// derivatives stay in the family.
struct TrigTerm {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

/// coeff * t^power.
struct PolyTerm {
  double coeff = 0.0;
  int power = 0;
};

/// Piecewise polynomial in local coordinates: on [breaks[i], breaks[i+1]) the
/// value is sum_j coeffs(j, i) * (t - breaks[i])^j. Evaluation clamps t to the
/// domain; derivatives beyond the degree are zero.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> breaks, Matrix coeffs);

  double value(double t, int order = 0) const;
  int degree() const { return static_cast<int>(coeffs_.rows()) - 1; }
  int intervals() const { return static_cast<int>(coeffs_.cols()); }
  const std::vector<double>& breaks() const { return breaks_; }

 private:
  std::vector<double> breaks_;  // size intervals()+1
  Matrix coeffs_;               // (degree+1) x intervals
};

/// One closed-form channel: trig terms + polynomial terms + optional piecewise
/// polynomial, each differentiable in closed form.
class AnalyticChannel {
 public:
  AnalyticChannel() = default;

  static AnalyticChannel sine(double amplitude, double omega, double phase = 0.0);
  static AnalyticChannel cosine(double amplitude, double omega, double phase = 0.0);
  static AnalyticChannel polynomial(std::vector<double> coeffs_low_to_high);
  static AnalyticChannel piecewise(PiecewisePolynomial pp);

  AnalyticChannel& add_sine(double amplitude, double omega, double phase = 0.0);
  AnalyticChannel& add_cosine(double amplitude, double omega, double phase = 0.0);
  AnalyticChannel& add_poly(double coeff, int power);

  double value(double t, int order = 0) const;

  /// Largest derivative order that is continuous everywhere. Trig/poly content
  /// is smooth; a degree-d piecewise polynomial is C^{d-1}.
  int smoothness() const;

  /// Channel with time shifted: result(t) = this(t + delta).
  AnalyticChannel shifted(double delta) const;

  bool empty() const { return trig_.empty() && poly_.empty() && pieces_.empty(); }

 private:
  std::vector<TrigTerm> trig_;
  std::vector<PolyTerm> poly_;
  std::vector<PiecewisePolynomial> pieces_;
};

/// Multichannel closed-form signal; the carrier for spline inputs and latent
/// variables, with exact derivatives of any order.
struct AnalyticSignal {
  std::vector<AnalyticChannel> channels;

  int channel_count() const { return static_cast<int>(channels.size()); }
  int smoothness() const;
  AnalyticSignal shifted(double delta) const;

  /// Samples the order-th derivative of all channels on a uniform grid.
  SampledSignal sample(double t0, double dt, long n, int order = 0) const;

  /// Derivative stack orders 0..max_order, all on the same grid.
  std::vector<SampledSignal> sample_derivatives(double t0, double dt, long n,
                                                int max_order) const;
};

}  // namespace ctlti
