// rggeo command-line driver. Exit codes: 0 success, 2 config error, 3 runtime failure.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rggeo/conditions.hpp"
#include "rggeo/config.hpp"
#include "rggeo/error.hpp"
#include "rggeo/graph.hpp"
#include "rggeo/oracle.hpp"
#include "rggeo/render.hpp"
#include "rggeo/sampling.hpp"
#include "rggeo/shortest_path.hpp"
#include "rggeo/sweep.hpp"

namespace fs = std::filesystem;
using namespace rggeo;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

fs::path out_path(const RunConfig& c, const std::string& given, const std::string& fallback) {
  return given.empty() ? fs::path(c.output) / fallback : fs::path(given);
}

struct Instance {
  RunConfig config;
  PointCloud cloud;
  EpsilonGraph graph;
  double epsilon;
};

Instance make_instance(const std::string& cfg, std::size_t n, std::uint64_t seed) {
  Instance in;
  in.config = load_config(cfg);
  if (n == 0) n = in.config.n_list.front();
  const Domain dom = in.config.domain();
  in.cloud = sample_points(in.config.make_density(), dom, n, seed);
  in.epsilon = epsilon_for(n, in.config.delta, dom.dim()).epsilon;
  in.graph = build_graph(in.cloud, in.config.a, in.config.b, in.epsilon);
  return in;
}

void write_path_csv(std::ostream& out, const PointSet& pts, const std::vector<double>* times) {
  out << "index" << (times ? ",t" : "");
  for (std::size_t j = 0; j < pts.dim(); ++j) out << ",x" << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << i;
    if (times) out << ',' << num((*times)[i]);
    for (double x : pts[i]) out << ',' << num(x);
    out << '\n';
  }
}

ScalarField kernel_field(const Kernel& k) {
  return [k](std::span<const double> x) {
    const double e1[2] = {1.0, 0.0};
    return k(x, e1);
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic distances from epsilon-random geometric graphs"};
  app.require_subcommand(1);
  std::string cfg, out, cost_name = "H", table_path, cache_dir, condition = "all";
  std::size_t n = 0, samples = 10000;
  std::uint64_t seed = 1, check_seed = 0;
  std::optional<int> hop_cap;
  double tol = 1e-7, alpha = 1.2;
  unsigned threads = 0;
  bool with_oracle = false, no_graph = false, fit_abs = false;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("-c,--config", cfg, "run config (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("-n,--n", n, "number of sample points (default: first of n_list)");
    sub->add_option("-s,--seed", seed, "sampling seed");
    sub->add_option("-o,--out", out, "output file");
  };

  CLI::App* sample = app.add_subcommand("sample", "sample a point cloud to CSV");
  add_instance(sample);
  CLI::App* graph = app.add_subcommand("graph", "build the epsilon-graph and write its edges");
  add_instance(graph);
  CLI::App* dist = app.add_subcommand("dist", "minimize a discrete cost between a and b");
  add_instance(dist);
  dist->add_option("--cost", cost_name, "H, L or G");
  dist->add_option("--hop-cap", hop_cap, "hop cap for p > 1");
  CLI::App* geo = app.add_subcommand("geodesic", "compute the reference geodesic");
  geo->add_option("-c,--config", cfg, "run config (YAML)")->required()->check(CLI::ExistingFile);
  geo->add_option("-o,--out", out, "path CSV");
  geo->add_option("--cache-dir", cache_dir, "oracle cache directory");
  CLI::App* sweep = app.add_subcommand("sweep", "run the (n, seed, cost) sweep");
  sweep->add_option("-c,--config", cfg, "run config (YAML)")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--out", out, "output directory (default: config output)");
  sweep->add_option("-j,--threads", threads, "worker threads (default: config threads)");
  sweep->add_option("--cache-dir", cache_dir, "oracle cache directory");
  CLI::App* check = app.add_subcommand("check-kernel", "audit structural kernel conditions");
  check->add_option("-c,--config", cfg, "run config (YAML)")->required()->check(CLI::ExistingFile);
  check->add_option("--condition", condition, "condition name or 'all'");
  check->add_option("--samples", samples, "samples per condition");
  check->add_option("--tol", tol, "violation tolerance");
  check->add_option("--seed", check_seed, "audit seed");
  check->add_option("--alpha", alpha, "Pythag exponent");
  check->add_option("-o,--out", out, "report CSV");
  CLI::App* render = app.add_subcommand("render", "draw graph, optimal path and geodesic as SVG");
  add_instance(render);
  render->add_option("--cost", cost_name, "H, L or G");
  render->add_flag("--oracle", with_oracle, "also draw the reference geodesic");
  render->add_flag("--no-graph", no_graph, "omit graph edges");
  render->add_option("--cache-dir", cache_dir, "oracle cache directory");
  CLI::App* fit = app.add_subcommand("fit-rate", "fit log median gap against log n");
  fit->add_option("-t,--table", table_path, "sweep CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--cost", cost_name, "H, L or G");
  fit->add_flag("--abs", fit_abs, "fit the median of |gap| (signed gaps of either sign)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sample) {
      const Instance in = make_instance(cfg, n, seed);
      auto f = open_out(out_path(in.config, out, "points.csv"));
      write_path_csv(f, in.cloud.points, nullptr);
      std::cout << "wrote " << in.cloud.points.size() << " points\n";
    } else if (*graph) {
      const Instance in = make_instance(cfg, n, seed);
      auto f = open_out(out_path(in.config, out, "edges.csv"));
      write_adjacency_csv(in.graph, f);
      std::cout << "vertices " << in.graph.num_vertices() << " edges " << in.graph.num_edges()
                << " epsilon " << num(in.epsilon) << " connected "
                << (is_connected(in.graph, in.graph.a_index(), in.graph.b_index()) ? "yes" : "no")
                << '\n';
    } else if (*dist) {
      const Instance in = make_instance(cfg, n, seed);
      const Kernel k = in.config.make_kernel();
      const CostType type = parse_cost_type(cost_name);
      const ShortestPathResult sp = shortest_path(
          in.graph, k, in.config.cost_kind(type), hop_cap ? hop_cap : in.config.hop_cap);
      PointSet pts(in.graph.dim());
      for (auto v : sp.path.vertices) pts.push_back(in.graph.vertex(v));
      auto f = open_out(out_path(in.config, out, "path.csv"));
      write_path_csv(f, pts, nullptr);
      std::cout << "cost " << to_string(type) << " value " << num(sp.value) << " hops "
                << sp.path.edges() << " epsilon " << num(in.epsilon) << '\n';
    } else if (*geo) {
      const RunConfig c = load_config(cfg);
      bool cached = false;
      const OracleResult r =
          compute_oracle(c, cache_dir.empty() ? (fs::path(c.output) / "cache").string() : cache_dir,
                         &cached);
      auto f = open_out(out_path(c, out, "geodesic.csv"));
      write_path_csv(f, r.path.points(), &r.path.times());
      std::cout << "value " << num(r.value) << " method " << to_string(r.method.kind)
                << " residual " << num(r.residual) << " iterations " << r.iterations
                << (cached ? " (cached)" : "") << '\n';
    } else if (*sweep) {
      RunConfig c = load_config(cfg);
      if (!out.empty()) c.output = out;
      if (threads > 0) c.threads = threads;
      const fs::path dir(c.output);
      fs::create_directories(dir);
      const ConvergenceTable table = run_sweep(
          c, cache_dir.empty() ? (dir / "cache").string() : cache_dir, [](const SweepRow& r) {
            std::cerr << "n=" << r.n << " seed=" << r.seed << " cost=" << to_string(r.cost) << ' '
                      << to_string(r.status) << " gap=" << r.rel_gap << '\n';
          });
      {
        auto f = open_out(dir / "sweep.csv");
        write_table_csv(table, f);
      }
      {
        auto f = open_out(dir / "summary.json");
        f << summary_json(c, table);
      }
      std::cout << "wrote " << table.rows.size() << " rows to " << (dir / "sweep.csv").string()
                << '\n';
    } else if (*check) {
      const RunConfig c = load_config(cfg);
      const Kernel k = c.make_kernel();
      std::vector<Condition> conds;
      if (condition == "all")
        conds = {Condition::Homogeneity, Condition::Ellipticity, Condition::Lip,
                 Condition::Convexity,   Condition::TrIneq,      Condition::Pythag,
                 Condition::Hilb,        Condition::Hamel};
      else
        conds = {parse_condition(condition)};
      ConditionParams params;
      params.alpha = alpha;
      std::ostringstream csv;
      csv << "condition,verdict,samples,worst_violation,estimated_constant,witness\n";
      for (Condition cond : conds) {
        std::string verdict, witness;
        std::size_t tested = 0;
        double worst = 0.0;
        std::optional<double> est;
        try {
          const ConditionReport r = check_condition(k, cond, c.domain(), samples, tol, check_seed, params);
          verdict = r.pass ? "pass" : "fail";
          tested = r.samples_tested;
          worst = r.worst_violation;
          est = r.estimated_constant;
          if (r.witness) {
            witness = r.witness->what + " =";
            for (const auto& p : r.witness->tuple) {
              witness += " (";
              for (std::size_t j = 0; j < p.size(); ++j) witness += (j ? " " : "") + num(p[j]);
              witness += ")";
            }
          }
        } catch (const UnsupportedError& e) {
          verdict = "unsupported";
          witness = e.what();
        }
        csv << to_string(cond) << ',' << verdict << ',' << tested << ',' << num(worst) << ','
            << (est ? num(*est) : "") << ",\"" << witness << "\"\n";
      }
      std::cout << csv.str();
      if (!out.empty()) {
        auto f = open_out(out);
        f << csv.str();
      }
    } else if (*render) {
      const Instance in = make_instance(cfg, n, seed);
      const Kernel k = in.config.make_kernel();
      if (in.config.domain().dim() != 2) throw UnsupportedError("render: only d = 2 is supported");
      std::vector<LabeledPath> paths;
      const CostType type = parse_cost_type(cost_name);
      try {
        const ShortestPathResult sp =
            shortest_path(in.graph, k, in.config.cost_kind(type), in.config.hop_cap);
        paths.push_back({interpolate(sp.path, in.graph),
                         to_string(type) + " path, n=" + std::to_string(in.cloud.n) + ", cost " +
                             num(sp.value).substr(0, 8),
                         "#d62728", true});
      } catch (const NoPathError&) {
        std::cerr << "a and b are disconnected; drawing the graph only\n";
      }
      if (with_oracle) {
        const OracleResult r = compute_oracle(
            in.config,
            cache_dir.empty() ? (fs::path(in.config.output) / "cache").string() : cache_dir);
        paths.push_back({r.path, "geodesic, cost " + num(r.value).substr(0, 8), "#2ca02c", false});
      }
      const ScalarField field =
          k.family() == KernelFamily::PowerNorm ? ScalarField{} : kernel_field(k);
      auto f = open_out(out_path(in.config, out, "scene.svg"));
      f << render_scene(in.config.domain(), no_graph ? nullptr : &in.graph, paths, field);
      std::cout << "rendered " << in.graph.num_edges() << " edges\n";
    } else if (*fit) {
      std::ifstream f(table_path);
      const ConvergenceTable table = read_table_csv(f);
      const RateFit r = fit_rate(table, parse_cost_type(cost_name), fit_abs);
      std::cout << "{\"slope\": " << num(r.slope) << ", \"intercept\": " << num(r.intercept)
                << ", \"r2\": " << num(r.r2) << ", \"n_used\": [";
      for (std::size_t i = 0; i < r.n_used.size(); ++i) std::cout << (i ? ", " : "") << r.n_used[i];
      std::cout << "], \"notes\": [";
      for (std::size_t i = 0; i < r.notes.size(); ++i)
        std::cout << (i ? ", " : "") << '"' << r.notes[i] << '"';
      std::cout << "]}\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
