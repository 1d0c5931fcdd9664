#include "rggeo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rggeo/error.hpp"
#include "rggeo/graph.hpp"
#include "rggeo/sampling.hpp"
#include "rggeo/shortest_path.hpp"

namespace rggeo {

using nlohmann::json;

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Disconnected: return "disconnected";
    case RowStatus::Infeasible: return "infeasible";
    case RowStatus::Failed: return "failed";
  }
  return "?";
}

namespace {

RowStatus parse_status(const std::string& s) {
  for (RowStatus r : {RowStatus::Ok, RowStatus::Disconnected, RowStatus::Infeasible, RowStatus::Failed})
    if (to_string(r) == s) return r;
  throw ConfigError("unknown row status '" + s + "'");
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string oracle_key(const RunConfig& c) {
  std::ostringstream k;
  auto vec = [&](const Point& p) {
    for (double x : p) k << num(x) << ',';
    k << '|';
  };
  k << "oracle-v1|" << c.kernel.family << '|' << num(c.kernel.p) << '|' << c.kernel.weight << '|';
  for (const auto& e : c.kernel.matrix) k << e << ';';
  k << '|' << (c.kernel.m1 ? num(*c.kernel.m1) : "-") << '|'
    << (c.kernel.m2 ? num(*c.kernel.m2) : "-") << '|';
  vec(c.lo);
  vec(c.hi);
  vec(c.a);
  vec(c.b);
  k << to_string(c.oracle.method) << '|' << num(c.oracle.h) << '|' << num(c.oracle.r_mult) << '|'
    << c.oracle.knots << '|' << c.oracle.iters;
  return k.str();
}

json oracle_to_json(const OracleResult& r, const std::string& key) {
  json j;
  j["key"] = key;
  j["value"] = r.value;
  j["method"] = to_string(r.method.kind);
  j["h"] = r.method.h;
  j["r"] = r.method.r;
  j["knots"] = r.method.knots;
  j["iters"] = r.method.iters;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["status"] = static_cast<int>(r.status);
  j["times"] = r.path.times();
  j["dim"] = r.path.dim();
  j["points"] = r.path.points().coords();
  return j;
}

OracleResult oracle_from_json(const json& j) {
  OracleResult r;
  r.value = j.at("value").get<double>();
  const std::string m = j.at("method").get<std::string>();
  r.method.kind = m == "grid" ? OracleMethod::Kind::Grid
                  : m == "refine" ? OracleMethod::Kind::Refined
                                  : OracleMethod::Kind::GridRefined;
  r.method.h = j.at("h").get<double>();
  r.method.r = j.at("r").get<double>();
  r.method.knots = j.at("knots").get<std::size_t>();
  r.method.iters = j.at("iters").get<int>();
  r.residual = j.at("residual").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.status = static_cast<RefineStatus>(j.at("status").get<int>());
  r.path = ContinuousPath(j.at("times").get<std::vector<double>>(),
                          PointSet(j.at("dim").get<std::size_t>(),
                                   j.at("points").get<std::vector<double>>()));
  return r;
}

OracleResult compute_oracle_uncached(const RunConfig& c) {
  const Kernel kernel = c.make_kernel();
  const Domain dom = c.domain();
  RefineOptions ro;
  ro.knots = c.oracle.knots;
  ro.iters = c.oracle.iters;
  ro.quad_order = std::max(c.quad_order, 8);
  GridOptions go;
  go.h = c.oracle.h;
  go.r = c.oracle.r_mult * c.oracle.h;
  switch (c.oracle.method) {
    case OracleSettings::Method::Grid: return grid_geodesic(kernel, dom, c.a, c.b, go);
    case OracleSettings::Method::Refine:
      return refine_geodesic(kernel, ContinuousPath::straight(c.a, c.b), ro);
    case OracleSettings::Method::GridRefine: {
      const OracleResult grid = grid_geodesic(kernel, dom, c.a, c.b, go);
      OracleResult best = refine_geodesic(kernel, grid.path, ro);
      const OracleResult straight = refine_geodesic(kernel, ContinuousPath::straight(c.a, c.b), ro);
      if (straight.value < best.value) best = straight;
      best.method = {OracleMethod::Kind::GridRefined, go.h, go.r, ro.knots, ro.iters};
      return best;
    }
  }
  throw ConfigError("unknown oracle method");
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

OracleResult compute_oracle(const RunConfig& config, const std::string& cache_dir, bool* from_cache) {
  if (from_cache) *from_cache = false;
  const bool use_cache = config.oracle.cache && !cache_dir.empty();
  const std::string key = oracle_key(config);
  char name[64];
  std::snprintf(name, sizeof name, "oracle_%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
  const std::filesystem::path file = std::filesystem::path(cache_dir) / name;
  std::lock_guard lock(cache_mutex());
  if (use_cache && std::filesystem::exists(file)) {
    try {
      std::ifstream in(file);
      const json j = json::parse(in);
      if (j.at("key").get<std::string>() == key) {
        if (from_cache) *from_cache = true;
        return oracle_from_json(j);
      }
    } catch (const std::exception&) {
      // Unreadable entries are recomputed and overwritten.
    }
  }
  OracleResult r = compute_oracle_uncached(config);
  if (use_cache) {
    std::filesystem::create_directories(cache_dir);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << oracle_to_json(r, key).dump() << '\n';
    }
    std::filesystem::rename(tmp, file);
  }
  return r;
}

std::size_t peak_memory_kb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
  return 0;
}

double median(std::vector<double> v) {
  if (v.empty()) throw ConfigError("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ConvergenceTable run_sweep(const RunConfig& config, const std::string& cache_dir,
                           const std::function<void(const SweepRow&)>& progress) {
  if (const auto errs = validate(config); !errs.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  const Kernel kernel = config.make_kernel();
  const DensitySpec density = config.make_density();
  const Domain dom = config.domain();
  const std::size_t d = dom.dim();

  ConvergenceTable table;
  table.oracle = compute_oracle(config, cache_dir, &table.oracle_from_cache);
  const OracleResult& oracle = table.oracle;

  const std::size_t ncost = config.costs.size();
  const std::size_t ncells = config.n_list.size() * config.seeds.size();
  table.rows.resize(ncells * ncost);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;

  auto run_cell = [&](std::size_t cell) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const std::size_t n = config.n_list[cell / config.seeds.size()];
    const std::uint64_t seed = config.seeds[cell % config.seeds.size()];
    const double eps = epsilon_for(n, config.delta, d).epsilon;
    const PointCloud cloud = sample_points(density, dom, n, seed);
    const EpsilonGraph graph = build_graph(cloud, config.a, config.b, eps);
    double rn = 0.0;
    if (config.rn_probe > 0.0) {
      const double spacing =
          config.rn_probe * std::pow(std::log(static_cast<double>(n)) / static_cast<double>(n),
                                     1.0 / static_cast<double>(d));
      rn = estimate_covering_radius(cloud.points, dom, spacing).value;
    }
    const double shared = std::chrono::duration<double>(clock::now() - t0).count();
    const double res = config.hausdorff_resolution.value_or(eps / 10.0);
    for (std::size_t ci = 0; ci < ncost; ++ci) {
      const auto t1 = clock::now();
      SweepRow& row = table.rows[cell * ncost + ci];
      row.n = n;
      row.seed = seed;
      row.cost = config.costs[ci];
      row.epsilon = eps;
      row.oracle_value = oracle.value;
      row.rn_est = rn;
      row.hausdorff_res = res;
      try {
        const CostKind kind = config.cost_kind(row.cost);
        const ShortestPathResult sp = shortest_path(graph, kernel, kind, config.hop_cap);
        row.min_cost = sp.value;
        row.h_cost = cost_riemann(graph, kernel, sp.path);
        row.l_cost = cost_linear(graph, kernel, sp.path, config.quad_order);
        row.rel_gap = (sp.value - oracle.value) / oracle.value;
        row.hops = sp.path.edges();
        PointSet verts(d);
        for (auto v : sp.path.vertices) verts.push_back(graph.vertex(v));
        const ContinuousPath lin = interpolate(sp.path, graph);
        row.hausdorff = hausdorff_distance(verts, oracle.path, res).value;
        row.hausdorff_interp = hausdorff_distance(lin, oracle.path, res).value;
        row.uniform_cs = uniform_distance(lin, oracle.path, Reparam::ConstantSpeed);
        row.diag = path_diagnostics(sp.path, graph, eps);
        row.path_points = std::move(verts);
      } catch (const NoPathError& e) {
        row.status = RowStatus::Disconnected;
        row.note = e.what();
      } catch (const InfeasibleError& e) {
        row.status = RowStatus::Infeasible;
        row.note = e.what();
      } catch (const Error& e) {
        row.status = RowStatus::Failed;
        row.note = e.what();
      }
      row.wall_time = shared + std::chrono::duration<double>(clock::now() - t1).count();
      row.peak_mem_kb = peak_memory_kb();
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(row);
      }
    }
  };

  auto worker = [&] {
    for (std::size_t cell; (cell = next.fetch_add(1)) < ncells;) run_cell(cell);
  };
  const unsigned nthreads = std::min<unsigned>(config.threads, static_cast<unsigned>(ncells));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return table;
}

namespace {

const char* const kColumns[] = {
    "n", "seed", "cost", "status", "epsilon", "min_cost", "h_cost", "l_cost", "oracle_value",
    "rel_gap", "hausdorff", "hausdorff_interp", "hausdorff_res", "uniform_cs", "hops",
    "boxes_visited", "max_pts_box", "theta_hops", "lipschitz_modulus", "path_length", "Rn_est",
    "wall_time", "peak_mem_kb"};

}  // namespace

void write_table_csv(const ConvergenceTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const SweepRow& r : table.rows) {
    out << r.n << ',' << r.seed << ',' << to_string(r.cost) << ',' << to_string(r.status) << ','
        << num(r.epsilon) << ',' << num(r.min_cost) << ',' << num(r.h_cost) << ','
        << num(r.l_cost) << ',' << num(r.oracle_value) << ',' << num(r.rel_gap) << ','
        << num(r.hausdorff) << ',' << num(r.hausdorff_interp) << ',' << num(r.hausdorff_res)
        << ',' << num(r.uniform_cs) << ',' << r.hops << ',' << r.diag.boxes_visited << ','
        << r.diag.max_points_per_box << ',' << r.diag.theta_hops << ','
        << num(r.diag.lipschitz_modulus) << ',' << num(r.diag.euclidean_length) << ','
        << num(r.rn_est) << ',' << num(r.wall_time) << ',' << r.peak_mem_kb << '\n';
  }
}

ConvergenceTable read_table_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
  };
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("table: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"n", "seed", "cost", "status", "rel_gap"})
    if (!col.count(need)) throw ConfigError(std::string("table: missing column '") + need + "'");
  ConvergenceTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size())
      throw ConfigError("table: line " + std::to_string(lineno) + " has the wrong column count");
    auto dbl = [&](const char* name, double fallback = 0.0) {
      const auto it = col.find(name);
      return it == col.end() ? fallback : std::stod(f[it->second]);
    };
    SweepRow r;
    try {
      r.n = std::stoul(f[col["n"]]);
      r.seed = std::stoull(f[col["seed"]]);
      r.cost = parse_cost_type(f[col["cost"]]);
      r.status = parse_status(f[col["status"]]);
      r.epsilon = dbl("epsilon");
      r.min_cost = dbl("min_cost");
      r.h_cost = dbl("h_cost");
      r.l_cost = dbl("l_cost");
      r.oracle_value = dbl("oracle_value");
      r.rel_gap = dbl("rel_gap");
      r.hausdorff = dbl("hausdorff");
      r.hausdorff_interp = dbl("hausdorff_interp");
      r.hausdorff_res = dbl("hausdorff_res");
      r.uniform_cs = dbl("uniform_cs");
      r.hops = static_cast<std::size_t>(dbl("hops"));
      r.diag.boxes_visited = static_cast<std::size_t>(dbl("boxes_visited"));
      r.diag.max_points_per_box = static_cast<std::size_t>(dbl("max_pts_box"));
      r.diag.theta_hops = static_cast<std::size_t>(dbl("theta_hops"));
      r.diag.lipschitz_modulus = dbl("lipschitz_modulus");
      r.diag.euclidean_length = dbl("path_length");
      r.rn_est = dbl("Rn_est");
      r.wall_time = dbl("wall_time");
      r.peak_mem_kb = static_cast<std::size_t>(dbl("peak_mem_kb"));
    } catch (const std::logic_error&) {
      throw ConfigError("table: malformed value on line " + std::to_string(lineno));
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

RateFit fit_rate(const ConvergenceTable& table, CostType cost, bool absolute) {
  std::map<std::size_t, std::vector<double>> gaps;
  for (const SweepRow& r : table.rows)
    if (r.cost == cost && r.status == RowStatus::Ok) gaps[r.n].push_back(absolute ? std::abs(r.rel_gap) : r.rel_gap);
  RateFit fit;
  std::vector<double> xs, ys;
  for (const auto& [n, g] : gaps) {
    const double m = median(g);
    if (!(m > 0.0)) {
      fit.notes.push_back("n=" + std::to_string(n) + " excluded: median gap " + num(m) + " <= 0");
      continue;
    }
    fit.n_used.push_back(n);
    fit.median_gap.push_back(m);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(m));
  }
  if (xs.size() < 3)
    throw Error("fit_rate: need at least 3 values of n with positive median gap, have " +
                std::to_string(xs.size()));
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

std::string summary_json(const RunConfig& config, const ConvergenceTable& table) {
  json j;
  j["schema_version"] = ConvergenceTable::kSchemaVersion;
  j["name"] = config.name;
  j["config"] = dump_config(config);
  j["rows"] = table.rows.size();
  j["oracle"] = {{"value", table.oracle.value},
                 {"method", to_string(table.oracle.method.kind)},
                 {"residual", table.oracle.residual},
                 {"iterations", table.oracle.iterations},
                 {"from_cache", table.oracle_from_cache}};
  std::map<std::string, std::size_t> status_counts;
  for (const auto& r : table.rows) ++status_counts[to_string(r.status)];
  j["status_counts"] = status_counts;
  json per = json::array();
  for (CostType cost : config.costs) {
    for (std::size_t n : config.n_list) {
      std::vector<double> gap, agap, haus, minc, bve, mpb, rn;
      for (const auto& r : table.rows) {
        if (r.cost != cost || r.n != n || r.status != RowStatus::Ok) continue;
        gap.push_back(r.rel_gap);
        agap.push_back(std::abs(r.rel_gap));
        haus.push_back(r.hausdorff);
        minc.push_back(r.min_cost);
        bve.push_back(static_cast<double>(r.diag.boxes_visited) * r.epsilon);
        mpb.push_back(static_cast<double>(r.diag.max_points_per_box));
        rn.push_back(r.rn_est);
      }
      json e{{"cost", to_string(cost)}, {"n", n}, {"ok_rows", gap.size()}};
      if (!gap.empty()) {
        e["median_min_cost"] = median(minc);
        e["median_rel_gap"] = median(gap);
        e["median_abs_rel_gap"] = median(agap);
        e["median_hausdorff"] = median(haus);
        e["median_boxes_times_eps"] = median(bve);
        e["median_max_pts_box"] = median(mpb);
        e["median_Rn_est"] = median(rn);
      }
      per.push_back(e);
    }
  }
  j["medians"] = per;
  json fits = json::object();
  for (CostType cost : config.costs) {
    try {
      const RateFit f = fit_rate(table, cost);
      fits[to_string(cost)] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2},
                               {"n_used", f.n_used}, {"notes", f.notes}};
    } catch (const Error& e) {
      fits[to_string(cost)] = {{"error", e.what()}};
    }
  }
  j["fit_rate"] = fits;
  return j.dump(2) + "\n";
}

}  // namespace rggeo
