#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rggeo/kernel.hpp"

namespace rggeo {

/// Structural conditions audited by check_condition. Hamel is the
/// finite-difference symmetry test of d_{x_i} d_{v_j} f; it is reported on its
/// own because spatially varying kernels may pass Hilb while failing it.
enum class Condition { Homogeneity, Ellipticity, Lip, Convexity, TrIneq, Pythag, Hilb, Hamel };

std::string to_string(Condition condition);
/// Accepts the names produced by to_string (case-insensitive).
Condition parse_condition(const std::string& name);

struct ConditionParams {
  /// Pythag exponent and geometric constants.
  double alpha = 1.2;
  double pythag_c = 1.0;
  double eta = 0.9;
  /// Hilb: knots of the random initial polyline and descent iterations.
  std::size_t hilb_knots = 6;
  int hilb_iters = 60;
};

struct Witness {
  /// Points and vectors of the violating sample, in the order named by `what`.
  std::vector<Point> tuple;
  std::string what;
};

struct ConditionReport {
  Condition condition = Condition::Homogeneity;
  double alpha = 0.0;  // Pythag only
  std::size_t samples_tested = 0;
  /// Largest normalized violation seen; <= tol on Pass.
  double worst_violation = 0.0;
  /// Lip: max |f(x,v) - f(y,v)| / (|x-y| |v|^p). Pythag: min gain / r^alpha.
  std::optional<double> estimated_constant;
  bool pass = true;
  std::optional<Witness> witness;  // set iff !pass
};

/// Randomized audit of one condition over `n_samples` samples.
///
/// Throws UnsupportedError for Lip without a declared constant and Pythag in
/// d = 1. Velocities for Ellipticity and Lip are unit vectors.
ConditionReport check_condition(const Kernel& kernel, Condition condition, const Domain& domain,
                                std::size_t n_samples = 10000, double tol = 1e-7,
                                std::uint64_t seed = 0, const ConditionParams& params = {});

}  // namespace rggeo
