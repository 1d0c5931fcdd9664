#include "rggeo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rggeo/error.hpp"
#include "rggeo/random.hpp"

namespace rggeo {

namespace {

double power_of_norm(std::span<const double> v, double p) {
  double s = 0.0;
  for (double c : v) s += c * c;
  if (p == 1.0) return std::sqrt(s);
  if (p == 2.0) return s;
  return std::pow(s, 0.5 * p);
}

double abs_max(Interval r) { return std::max(std::abs(r.lo), std::abs(r.hi)); }

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ConfigError("kernel: homogeneity degree p must satisfy p >= 1");
}

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::PowerNorm: return "power_norm";
    case KernelFamily::WeightedEuclidean: return "weighted_euclidean";
    case KernelFamily::QuadraticForm: return "quadratic_form";
    case KernelFamily::Custom: return "custom";
  }
  return "unknown";
}

Kernel::Kernel(KernelFamily family, std::string description, Domain domain,
               double p, double m1, double m2, std::optional<double> lip_c,
               EvalFn eval)
    : family_(family),
      description_(std::move(description)),
      domain_(std::move(domain)),
      p_(p),
      m1_(m1),
      m2_(m2),
      lip_c_(lip_c),
      eval_(std::move(eval)) {
  require_p(p_);
  if (!(m1_ > 0.0) || !(m2_ >= m1_))
    throw ConfigError("kernel: require 0 < m1 <= m2");
  if (lip_c_ && !(*lip_c_ >= 0.0))
    throw ConfigError("kernel: Lipschitz constant must be nonnegative");
  if (!eval_) throw ConfigError("kernel: missing evaluation function");
}

Kernel Kernel::frozen_at(std::span<const double> x0) const {
  Point anchor(x0.begin(), x0.end());
  EvalFn inner = eval_;
  EvalFn frozen = [anchor = std::move(anchor), inner](std::span<const double>,
                                                      std::span<const double> v) {
    return inner(anchor, v);
  };
  return Kernel(family_, description_ + " [frozen]", domain_, p_, m1_, m2_, 0.0,
                std::move(frozen));
}

Kernel make_power_norm(const Domain& domain, double p) {
  require_p(p);
  std::ostringstream desc;
  desc << "|v|^" << p;
  return Kernel(KernelFamily::PowerNorm, desc.str(), domain, p, 1.0, 1.0, 0.0,
                [p](std::span<const double>, std::span<const double> v) {
                  return power_of_norm(v, p);
                });
}

Kernel make_weighted_euclidean(const Domain& domain, const Expression& weight,
                               double p) {
  require_p(p);
  if (weight.max_coordinate() > domain.dim())
    throw ConfigError("weighted kernel: weight uses coordinates beyond the domain dimension");
  const Interval range = weight.bound(domain.lo(), domain.hi());
  if (!(range.lo > 0.0) || !std::isfinite(range.hi))
    throw ConfigError("weighted kernel: weight '" + weight.text() +
                      "' is not bounded in (0, inf) on the domain");

  std::vector<Expression> grad;
  for (std::size_t k = 0; k < domain.dim(); ++k) grad.push_back(weight.derivative(k));
  double lip_sq = 0.0;
  for_each_cell(domain.lo(), domain.hi(), 16384, [&](std::span<const Interval> box) {
    double s = 0.0;
    for (const Expression& g : grad) {
      const double m = abs_max(g.eval(box));
      s += m * m;
    }
    lip_sq = std::max(lip_sq, s);
  });
  const double lip = std::sqrt(lip_sq);

  auto w = std::make_shared<const Expression>(weight);
  std::ostringstream desc;
  desc << "(" << weight.text() << ")*|v|^" << p;
  return Kernel(KernelFamily::WeightedEuclidean, desc.str(), domain, p, range.lo,
                range.hi, std::isfinite(lip) ? std::optional<double>(lip) : std::nullopt,
                [w, p](std::span<const double> x, std::span<const double> v) {
                  return w->eval(x) * power_of_norm(v, p);
                });
}

Kernel make_quadratic_form(const Domain& domain,
                           const std::vector<Expression>& entries, double p) {
  require_p(p);
  const std::size_t d = domain.dim();
  if (entries.size() != d * d)
    throw ConfigError("quadratic kernel: expected " + std::to_string(d * d) +
                      " matrix entries");
  for (const Expression& e : entries)
    if (e.max_coordinate() > d)
      throw ConfigError("quadratic kernel: entry uses coordinates beyond the domain dimension");

  // Per-cell Gershgorin enclosure of the spectrum of the symmetric part.
  std::vector<std::vector<Expression>> grad(d);
  for (std::size_t k = 0; k < d; ++k)
    for (const Expression& e : entries) grad[k].push_back(e.derivative(k));

  double lam_lo = std::numeric_limits<double>::infinity();
  double lam_hi = -std::numeric_limits<double>::infinity();
  double lm_sq = 0.0;
  std::vector<Interval> m(d * d);
  for_each_cell(domain.lo(), domain.hi(), 4096, [&](std::span<const Interval> box) {
    for (std::size_t i = 0; i < d * d; ++i) m[i] = entries[i].eval(box);
    for (std::size_t i = 0; i < d; ++i) {
      double radius = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        const Interval s{0.5 * (m[i * d + j].lo + m[j * d + i].lo),
                         0.5 * (m[i * d + j].hi + m[j * d + i].hi)};
        radius += abs_max(s);
      }
      lam_lo = std::min(lam_lo, m[i * d + i].lo - radius);
      lam_hi = std::max(lam_hi, m[i * d + i].hi + radius);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      for (const Expression& g : grad[k]) {
        const double a = abs_max(g.eval(box));
        s += a * a;
      }
    lm_sq = std::max(lm_sq, s);
  });
  if (!(lam_lo > 0.0) || !std::isfinite(lam_hi))
    throw ConfigError("quadratic kernel: M(x) is not strictly elliptic on the domain "
                      "(Gershgorin lower bound " + std::to_string(lam_lo) + ")");
  lam_lo *= 1.0 - 1e-12;
  lam_hi *= 1.0 + 1e-12;

  // f = q^{p/2} with q = <v,Mv> in [lam_lo, lam_hi] |v|^2, so
  // |f(x,v) - f(y,v)| <= (p/2) max(q^{p/2-1}) |<v,(M(x)-M(y))v>|.
  const double lm = std::sqrt(lm_sq);
  const double chain = 0.5 * p *
                       std::max(std::pow(lam_lo, 0.5 * p - 1.0),
                                std::pow(lam_hi, 0.5 * p - 1.0));
  const double lip = chain * lm;

  auto mat = std::make_shared<const std::vector<Expression>>(entries);
  std::ostringstream desc;
  desc << "<v,M(x)v>^" << 0.5 * p << " with M=[";
  for (std::size_t i = 0; i < entries.size(); ++i)
    desc << (i ? "; " : "") << entries[i].text();
  desc << "]";
  return Kernel(KernelFamily::QuadraticForm, desc.str(), domain, p,
                std::pow(lam_lo, 0.5 * p), std::pow(lam_hi, 0.5 * p),
                std::isfinite(lip) ? std::optional<double>(lip) : std::nullopt,
                [mat, d, p](std::span<const double> x, std::span<const double> v) {
                  double q = 0.0;
                  for (std::size_t i = 0; i < d; ++i) {
                    if (v[i] == 0.0) continue;
                    double row = 0.0;
                    for (std::size_t j = 0; j < d; ++j)
                      if (v[j] != 0.0) row += (*mat)[i * d + j].eval(x) * v[j];
                    q += v[i] * row;
                  }
                  q = std::max(q, 0.0);
                  return p == 1.0 ? std::sqrt(q) : std::pow(q, 0.5 * p);
                });
}

Kernel make_custom(const Domain& domain, std::string description, double p,
                   double m1, double m2, std::optional<double> lip_c,
                   Kernel::EvalFn eval) {
  return Kernel(KernelFamily::Custom, std::move(description), domain, p, m1, m2,
                lip_c, std::move(eval));
}

double eval_kernel(const Kernel& kernel, std::span<const double> x,
                   std::span<const double> v) {
  if (!kernel.domain().contains(x, 1e-12))
    throw DomainError("eval_kernel: point outside the domain");
  if (v.size() != kernel.dim())
    throw DomainError("eval_kernel: velocity dimension mismatch");
  for (double c : v)
    if (!std::isfinite(c)) throw DomainError("eval_kernel: non-finite velocity");
  bool zero = true;
  for (double c : v) zero = zero && c == 0.0;
  if (zero) return 0.0;
  return kernel(x, v);
}

EllipticityEstimate estimate_ellipticity(const Kernel& kernel,
                                         const Domain& domain,
                                         std::size_t n_samples,
                                         std::uint64_t seed) {
  if (n_samples == 0) throw ConfigError("estimate_ellipticity: n_samples must be >= 1");
  Rng rng(seed);
  const std::size_t d = domain.dim();
  Point x(d), u(d);
  EllipticityEstimate est{std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.uniform(domain.lo()[k], domain.hi()[k]);
    rng.unit_vector(u);
    const double f = kernel(x, u);
    est.m1_hat = std::min(est.m1_hat, f);
    est.m2_hat = std::max(est.m2_hat, f);
  }
  return est;
}

}  // namespace rggeo
