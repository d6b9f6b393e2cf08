#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ctlti {

/// Stream seeds are derived with SplitMix64 from (master, index, tag) so that
/// every consumer (spline knots, noise, latent coefficients) draws from an
/// independent, reproducible stream. The engine is std::mt19937_64 whose output
/// sequence is fixed by the standard; the uniform/normal transforms below avoid
/// the implementation-defined std distributions.
std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::string_view tag);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-a, a].
  double uniform_sym(double a) { return a * (2.0 * uniform01() - 1.0); }

  /// Standard normal via Box-Muller (bit-reproducible across platforms).
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ctlti
