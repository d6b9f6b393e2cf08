#include "ctlti/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctlti/rng.hpp"

namespace ctlti {

SampledSignal add_noise(const SampledSignal& y, const NoiseSpec& spec) {
  if (spec.std < 0.0) throw std::invalid_argument("add_noise: negative standard deviation");
  SampledSignal out = y;
  if (spec.std == 0.0) return out;
  RandomStream rng(spec.seed);
  for (long i = 0; i < out.samples(); ++i)
    for (int c = 0; c < out.channels(); ++c)
      out.values(c, i) += spec.std * rng.gaussian();
  return out;
}

double snr_db(const SampledSignal& y, const SampledSignal& noise) {
  if (y.samples() != noise.samples() || y.channels() != noise.channels())
    throw std::invalid_argument("snr_db: signal and noise shapes differ");
  const double sig = y.values.squaredNorm();
  const double nse = noise.values.squaredNorm();
  if (nse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(sig / nse);
}

double relative_error(const SampledSignal& x_ref, const SampledSignal& x_hat) {
  if (x_ref.samples() != x_hat.samples() || x_ref.channels() != x_hat.channels())
    throw std::invalid_argument("relative_error: trajectory shapes differ");
  const long S = x_ref.samples();
  if (S < 2) throw std::invalid_argument("relative_error: need at least 2 samples");
  const int n = x_ref.channels();
  Vector inv_std(n);
  for (int i = 0; i < n; ++i) {
    const double mean = x_ref.values.row(i).mean();
    const double var =
        (x_ref.values.row(i).array() - mean).square().sum() / static_cast<double>(S - 1);
    if (!(var > 0.0))
      throw std::invalid_argument("relative_error: reference state has zero deviation");
    inv_std(i) = 1.0 / std::sqrt(var);
  }
  const double num = (inv_std.asDiagonal() * (x_hat.values - x_ref.values)).norm();
  const double den = (inv_std.asDiagonal() * x_ref.values).norm();
  return num / den;
}

}  // namespace ctlti
