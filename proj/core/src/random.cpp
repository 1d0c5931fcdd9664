#include "rggeo/random.hpp"

#include <cmath>
#include <numbers>

#include "rggeo/geometry.hpp"

namespace rggeo {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void Rng::unit_vector(std::span<double> out) {
  for (;;) {
    for (double& c : out) c = normal();
    const double n = norm(out);
    if (n > 1e-12) {
      for (double& c : out) c /= n;
      return;
    }
  }
}

}  // namespace rggeo
