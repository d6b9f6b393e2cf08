#pragma once

#include <cstdint>

#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

struct NoiseSpec {
  double std = 0.0;
  std::uint64_t seed = 0;
};

/// Adds i.i.d. Gaussian(0, std^2) to every sample; deterministic per seed.
SampledSignal add_noise(const SampledSignal& y, const NoiseSpec& spec);

/// 10 log10(sum |y_i|^2 / sum |eta_i|^2); +infinity for zero noise energy.
double snr_db(const SampledSignal& y, const SampledSignal& noise);

/// Relative Frobenius error || S^{-1}(Xhat - X) ||_F / || S^{-1} X ||_F with S
/// the diagonal of per-state sample standard deviations (N-1 convention) of
/// the reference. Throws when a reference state has zero deviation.
double relative_error(const SampledSignal& x_ref, const SampledSignal& x_hat);

}  // namespace ctlti
