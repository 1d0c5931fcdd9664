#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace rggeo {

/// Seedable generator with a platform-independent output stream.
///
/// std::mt19937_64 is fully specified by the standard; doubles are formed
/// from the top 53 bits so no implementation-defined distribution is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }
  /// Standard normal via Box-Muller (both draws consumed).
  double normal();
  /// Uniform point on the unit sphere of R^d.
  void unit_vector(std::span<double> out);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rggeo
