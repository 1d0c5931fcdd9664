#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rggeo/discrete_cost.hpp"
#include "rggeo/kernel.hpp"
#include "rggeo/sampling.hpp"

namespace rggeo {

struct KernelSpec {
  /// power_norm, weighted_euclidean or quadratic_form.
  std::string family = "power_norm";
  double p = 1.0;
  std::string weight;               // weighted_euclidean
  std::vector<std::string> matrix;  // quadratic_form, d*d row-major
  std::optional<double> m1;
  std::optional<double> m2;
  std::optional<double> lip_c;
};

struct DensityConfig {
  std::string kind = "uniform";  // uniform or expression
  std::string rho;
  std::optional<double> c_lo;
  std::optional<double> c_hi;
};

struct OracleSettings {
  enum class Method { Grid, Refine, GridRefine };
  Method method = Method::GridRefine;
  double h = 0.005;
  /// Neighborhood radius in units of h.
  double r_mult = 5.0;
  std::size_t knots = 128;
  int iters = 2000;
  bool cache = true;
};

std::string to_string(OracleSettings::Method method);

struct RunConfig {
  std::string name = "run";
  Point lo;
  Point hi;
  KernelSpec kernel;
  DensityConfig density;
  Point a;
  Point b;
  double delta = 0.3;
  std::vector<std::size_t> n_list;
  std::vector<std::uint64_t> seeds;
  std::vector<CostType> costs{CostType::Riemann};
  /// Unset means the automatic cap.
  std::optional<int> hop_cap;
  int quad_order = 8;
  LocalMode local;
  OracleSettings oracle;
  /// Densification for path Hausdorff; unset means epsilon / 10.
  std::optional<double> hausdorff_resolution;
  /// Covering-radius probe spacing as a multiple of (log n / n)^{1/d}; 0 disables.
  double rn_probe = 0.1;
  std::string output = "out";
  unsigned threads = 1;

  Domain domain() const;
  Kernel make_kernel() const;
  DensitySpec make_density() const;
  CostKind cost_kind(CostType type) const;
};

/// Every violation found in `config`; empty when valid.
std::vector<std::string> validate(const RunConfig& config);

/// Parses YAML text. Unknown keys, type errors and validation failures are
/// all collected and thrown together as one ConfigError.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::string& path);

/// Canonical YAML rendering; parse_config(dump_config(c)) reproduces c.
std::string dump_config(const RunConfig& config);

}  // namespace rggeo
