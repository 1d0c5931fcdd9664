#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rggeo/expression.hpp"
#include "rggeo/geometry.hpp"

namespace rggeo {

enum class KernelFamily { PowerNorm, WeightedEuclidean, QuadraticForm, Custom };

std::string to_string(KernelFamily family);

/// Cost integrand f(x, v) on D x R^d together with its declared constants.
///
/// A kernel is p-homogeneous and convex in v with m1 |v|^p <= f(x,v) <= m2 |v|^p.
/// Instances are immutable and may be shared across threads.
class Kernel {
 public:
  using EvalFn =
      std::function<double(std::span<const double>, std::span<const double>)>;

  Kernel(KernelFamily family, std::string description, Domain domain, double p,
         double m1, double m2, std::optional<double> lip_c, EvalFn eval);

  /// Unchecked evaluation; the hot path for costs and oracles.
  double operator()(std::span<const double> x, std::span<const double> v) const {
    return eval_(x, v);
  }

  KernelFamily family() const { return family_; }
  const std::string& description() const { return description_; }
  const Domain& domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }
  double p() const { return p_; }
  double m1() const { return m1_; }
  double m2() const { return m2_; }
  std::optional<double> lip_c() const { return lip_c_; }

  /// The same kernel with x frozen at `x0`: (x, v) -> f(x0, v).
  Kernel frozen_at(std::span<const double> x0) const;

 private:
  KernelFamily family_;
  std::string description_;
  Domain domain_;
  double p_;
  double m1_;
  double m2_;
  std::optional<double> lip_c_;
  EvalFn eval_;
};

/// f(x,v) = |v|^p.
Kernel make_power_norm(const Domain& domain, double p);

/// f(x,v) = w(x) |v|^p. m1, m2 and the (Lip) constant are rigorous interval
/// enclosures of w and |grad w| over the box. Throws ConfigError if w is not
/// bounded below by a positive constant on the domain.
Kernel make_weighted_euclidean(const Domain& domain, const Expression& weight,
                               double p = 1.0);

/// f(x,v) = <v, M(x) v>^{p/2} with `entries` the d*d row-major entries of M.
/// Only the symmetric part of M contributes. Constants come from interval
/// Gershgorin bounds; throws ConfigError unless M is strictly elliptic on D.
Kernel make_quadratic_form(const Domain& domain,
                           const std::vector<Expression>& entries,
                           double p = 1.0);

/// User-supplied integrand with user-declared constants.
Kernel make_custom(const Domain& domain, std::string description, double p,
                   double m1, double m2, std::optional<double> lip_c,
                   Kernel::EvalFn eval);

/// Checked evaluation: throws DomainError when x lies outside D.
double eval_kernel(const Kernel& kernel, std::span<const double> x,
                   std::span<const double> v);

struct EllipticityEstimate {
  double m1_hat;
  double m2_hat;
};

/// Min and max of f(x,u) over n_samples random x in D and unit vectors u.
EllipticityEstimate estimate_ellipticity(const Kernel& kernel,
                                         const Domain& domain,
                                         std::size_t n_samples,
                                         std::uint64_t seed);

}  // namespace rggeo
