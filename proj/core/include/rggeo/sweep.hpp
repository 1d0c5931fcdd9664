#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rggeo/config.hpp"
#include "rggeo/metrics.hpp"
#include "rggeo/oracle.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

enum class RowStatus { Ok, Disconnected, Infeasible, Failed };
std::string to_string(RowStatus status);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  CostType cost = CostType::Riemann;
  RowStatus status = RowStatus::Ok;
  std::string note;
  double epsilon = 0.0;
  double min_cost = 0.0;
  /// H_n and L_n evaluated on this row's optimal path.
  double h_cost = 0.0;
  double l_cost = 0.0;
  double oracle_value = 0.0;
  /// (min_cost - oracle) / oracle, signed.
  double rel_gap = 0.0;
  /// Path vertices vs the oracle image, and the interpolated path vs the image.
  double hausdorff = 0.0;
  double hausdorff_interp = 0.0;
  double hausdorff_res = 0.0;
  double uniform_cs = 0.0;
  std::size_t hops = 0;
  PathDiagnostics diag;
  double rn_est = 0.0;
  double wall_time = 0.0;
  std::size_t peak_mem_kb = 0;
  /// Vertex coordinates of the optimal path (not written to CSV).
  PointSet path_points;
};

struct ConvergenceTable {
  static constexpr int kSchemaVersion = 1;
  std::vector<SweepRow> rows;
  OracleResult oracle;
  bool oracle_from_cache = false;
};

/// Reference d_f(a, b) for the config's kernel and endpoints.
///
/// grid+refine refines both the grid path and the straight segment and keeps
/// the lower value. With a cache directory, results are stored as JSON named
/// by a hash of everything that determines them.
OracleResult compute_oracle(const RunConfig& config, const std::string& cache_dir = "",
                            bool* from_cache = nullptr);

/// Runs every (n, seed) cell; one row per (n, seed, cost) in config order.
/// Disconnected or infeasible cells produce flagged rows instead of errors.
/// `progress` is called from worker threads after each cell.
ConvergenceTable run_sweep(const RunConfig& config, const std::string& cache_dir = "",
                           const std::function<void(const SweepRow&)>& progress = {});

/// CSV with header; numbers at full precision.
void write_table_csv(const ConvergenceTable& table, std::ostream& out);
/// Reads the columns fit_rate needs from a CSV written by write_table_csv.
ConvergenceTable read_table_csv(std::istream& in);

/// Machine-readable summary: config, oracle, per (cost, n) medians, fits.
std::string summary_json(const RunConfig& config, const ConvergenceTable& table);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<std::size_t> n_used;
  std::vector<double> median_gap;
  std::vector<std::string> notes;
};

/// OLS of log(median rel_gap) on log n over Ok rows of one cost.
/// n with nonpositive median are dropped with a note; fewer than 3 left throws Error.
/// With `absolute`, the median of |rel_gap| is fitted instead.
RateFit fit_rate(const ConvergenceTable& table, CostType cost, bool absolute = false);

/// Median of a nonempty sample (mean of the middle two for even sizes).
double median(std::vector<double> values);

/// Peak resident set size of this process in kB (0 when unavailable).
std::size_t peak_memory_kb();

}  // namespace rggeo
