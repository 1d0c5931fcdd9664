#include "rggeo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rggeo/error.hpp"
#include "rggeo/expression.hpp"

namespace rggeo {

std::string to_string(OracleSettings::Method method) {
  switch (method) {
    case OracleSettings::Method::Grid: return "grid";
    case OracleSettings::Method::Refine: return "refine";
    case OracleSettings::Method::GridRefine: return "grid+refine";
  }
  return "?";
}

Domain RunConfig::domain() const { return Domain(lo, hi); }

Kernel RunConfig::make_kernel() const {
  const Domain d = domain();
  const std::size_t dim = d.dim();
  const std::string& fam = kernel.family;
  Kernel base = [&] {
    if (fam == "power_norm") return make_power_norm(d, kernel.p);
    if (fam == "weighted_euclidean")
      return make_weighted_euclidean(d, Expression::parse(kernel.weight, dim), kernel.p);
    if (fam == "quadratic_form") {
      std::vector<Expression> entries;
      for (const auto& e : kernel.matrix) entries.push_back(Expression::parse(e, dim));
      return make_quadratic_form(d, entries, kernel.p);
    }
    throw ConfigError("kernel.family: unknown family '" + fam + "'");
  }();
  if (!kernel.m1 && !kernel.m2 && !kernel.lip_c) return base;
  // Declared constants override the derived ones.
  const double m1 = kernel.m1.value_or(base.m1());
  const double m2 = kernel.m2.value_or(base.m2());
  const std::optional<double> lip = kernel.lip_c ? kernel.lip_c : base.lip_c();
  return Kernel(base.family(), base.description(), d, base.p(), m1, m2, lip,
                [base](std::span<const double> x, std::span<const double> v) { return base(x, v); });
}

DensitySpec RunConfig::make_density() const {
  if (density.kind == "uniform") return DensitySpec::uniform();
  if (density.kind == "expression")
    return DensitySpec::expression(Expression::parse(density.rho, lo.size()), domain(),
                                   density.c_lo, density.c_hi);
  throw ConfigError("density.kind: unknown kind '" + density.kind + "'");
}

CostKind RunConfig::cost_kind(CostType type) const {
  switch (type) {
    case CostType::Riemann: return CostKind::riemann();
    case CostType::Linear: return CostKind::linear(quad_order);
    case CostType::Quasinormal: return CostKind::quasinormal(local);
  }
  return {};
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errs;
  const std::size_t d = c.lo.size();
  bool geometry_ok = true;
  if (d == 0 || c.hi.size() != d) {
    errs.push_back("domain: lo and hi must be nonempty and of equal length");
    geometry_ok = false;
  } else {
    for (std::size_t k = 0; k < d; ++k)
      if (!(c.lo[k] < c.hi[k])) {
        errs.push_back("domain: need lo < hi in every coordinate");
        geometry_ok = false;
        break;
      }
  }
  if (geometry_ok) {
    const Domain dom(c.lo, c.hi);
    if (c.a.size() != d || !dom.contains(c.a)) errs.push_back("a: must be a point of the domain");
    if (c.b.size() != d || !dom.contains(c.b)) errs.push_back("b: must be a point of the domain");
    if (!(c.delta > 0.0) || !(c.delta < 1.0 / static_cast<double>(d))) {
      std::ostringstream s;
      s << "delta: " << c.delta << " violates 0 < delta < 1/d = " << 1.0 / static_cast<double>(d)
        << " (graph connectivity rate)";
      errs.push_back(s.str());
    }
  }
  if (c.n_list.empty()) errs.push_back("n_list: must be nonempty");
  if (std::any_of(c.n_list.begin(), c.n_list.end(), [](std::size_t n) { return n == 0; }))
    errs.push_back("n_list: every n must be positive");
  if (c.seeds.empty()) errs.push_back("seeds: must be nonempty");
  if (c.costs.empty()) errs.push_back("costs: must be nonempty");
  if (std::set<CostType>(c.costs.begin(), c.costs.end()).size() != c.costs.size())
    errs.push_back("costs: duplicate entries");
  if (c.hop_cap && *c.hop_cap < 1) errs.push_back("hop_cap: must be positive or auto");
  if (c.quad_order < 1 || c.quad_order > 64) errs.push_back("quad_order: must be in [1, 64]");
  if (c.local.knots < 2) errs.push_back("local_mode.knots: must be at least 2");
  if (c.local.iters < 0) errs.push_back("local_mode.iters: must be nonnegative");
  if (!(c.oracle.h > 0.0)) errs.push_back("oracle.h: must be positive");
  if (!(c.oracle.r_mult >= 3.0)) errs.push_back("oracle.r_mult: must be at least 3");
  if (c.oracle.knots < 2) errs.push_back("oracle.knots: must be at least 2");
  if (c.oracle.iters < 0) errs.push_back("oracle.iters: must be nonnegative");
  if (c.hausdorff_resolution && !(*c.hausdorff_resolution > 0.0))
    errs.push_back("hausdorff_resolution: must be positive");
  if (!(c.rn_probe >= 0.0)) errs.push_back("rn_probe: must be nonnegative");
  if (c.threads < 1) errs.push_back("threads: must be at least 1");
  if (c.output.empty()) errs.push_back("output: must be nonempty");
  if (c.kernel.family == "quadratic_form" && c.kernel.matrix.size() != d * d)
    errs.push_back("kernel.matrix: need d*d entries");
  if (c.kernel.family == "weighted_euclidean" && c.kernel.weight.empty())
    errs.push_back("kernel.weight: required for weighted_euclidean");
  if (c.density.kind == "expression" && c.density.rho.empty())
    errs.push_back("density.rho: required for kind expression");
  if (geometry_ok) {
    try {
      c.make_kernel();
    } catch (const ConfigError& e) {
      errs.push_back(std::string("kernel: ") + e.what());
    }
    try {
      c.make_density();
    } catch (const ConfigError& e) {
      errs.push_back(std::string("density: ") + e.what());
    }
  }
  return errs;
}

namespace {

class Reader {
 public:
  std::vector<std::string> errors;

  void keys(const YAML::Node& node, const std::string& where, std::set<std::string> allowed) {
    if (!node.IsMap()) {
      errors.push_back(where + ": expected a mapping");
      return;
    }
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) errors.push_back(where + ": unknown key '" + key + "'");
    }
  }

  template <class T>
  void get(const YAML::Node& node, const char* key, const std::string& where, T& out) {
    const YAML::Node v = node[key];
    if (!v) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      errors.push_back(where + key + ": wrong type");
    }
  }

  template <class T>
  void get(const YAML::Node& node, const char* key, const std::string& where, std::optional<T>& out) {
    const YAML::Node v = node[key];
    if (!v) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      errors.push_back(where + key + ": wrong type");
    }
  }
};

RunConfig from_yaml(const YAML::Node& root) {
  Reader rd;
  RunConfig c;
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  rd.keys(root, "config",
          {"name", "domain", "kernel", "density", "a", "b", "delta", "n_list", "seeds", "costs",
           "hop_cap", "quad_order", "local_mode", "oracle", "hausdorff_resolution", "rn_probe",
           "output", "threads"});
  rd.get(root, "name", "", c.name);
  if (const YAML::Node dom = root["domain"]) {
    rd.keys(dom, "domain", {"lo", "hi"});
    rd.get(dom, "lo", "domain.", c.lo);
    rd.get(dom, "hi", "domain.", c.hi);
  } else {
    rd.errors.push_back("domain: required");
  }
  if (const YAML::Node k = root["kernel"]) {
    rd.keys(k, "kernel", {"family", "p", "weight", "matrix", "m1", "m2", "lip_c"});
    rd.get(k, "family", "kernel.", c.kernel.family);
    rd.get(k, "p", "kernel.", c.kernel.p);
    rd.get(k, "weight", "kernel.", c.kernel.weight);
    rd.get(k, "matrix", "kernel.", c.kernel.matrix);
    rd.get(k, "m1", "kernel.", c.kernel.m1);
    rd.get(k, "m2", "kernel.", c.kernel.m2);
    rd.get(k, "lip_c", "kernel.", c.kernel.lip_c);
  }
  if (const YAML::Node den = root["density"]) {
    rd.keys(den, "density", {"kind", "rho", "c_lo", "c_hi"});
    rd.get(den, "kind", "density.", c.density.kind);
    rd.get(den, "rho", "density.", c.density.rho);
    rd.get(den, "c_lo", "density.", c.density.c_lo);
    rd.get(den, "c_hi", "density.", c.density.c_hi);
  }
  if (!root["a"]) rd.errors.push_back("a: required");
  if (!root["b"]) rd.errors.push_back("b: required");
  rd.get(root, "a", "", c.a);
  rd.get(root, "b", "", c.b);
  rd.get(root, "delta", "", c.delta);
  rd.get(root, "n_list", "", c.n_list);
  rd.get(root, "seeds", "", c.seeds);
  if (const YAML::Node costs = root["costs"]) {
    std::vector<std::string> names;
    rd.get(root, "costs", "", names);
    c.costs.clear();
    for (const auto& s : names) {
      try {
        c.costs.push_back(parse_cost_type(s));
      } catch (const ConfigError& e) {
        rd.errors.push_back(std::string("costs: ") + e.what());
      }
    }
  }
  if (const YAML::Node cap = root["hop_cap"]) {
    std::string text;
    rd.get(root, "hop_cap", "", text);
    if (text != "auto") {
      int v = 0;
      rd.get(root, "hop_cap", "", v);
      c.hop_cap = v;
    }
  }
  rd.get(root, "quad_order", "", c.quad_order);
  if (const YAML::Node lm = root["local_mode"]) {
    rd.keys(lm, "local_mode", {"kind", "knots", "iters"});
    std::string kind = "frozen";
    rd.get(lm, "kind", "local_mode.", kind);
    if (kind == "frozen") c.local.kind = LocalMode::Kind::Frozen;
    else if (kind == "refined") c.local.kind = LocalMode::Kind::Refined;
    else rd.errors.push_back("local_mode.kind: expected frozen or refined");
    rd.get(lm, "knots", "local_mode.", c.local.knots);
    rd.get(lm, "iters", "local_mode.", c.local.iters);
  }
  if (const YAML::Node o = root["oracle"]) {
    rd.keys(o, "oracle", {"method", "h", "r_mult", "knots", "iters", "cache"});
    std::string method = to_string(c.oracle.method);
    rd.get(o, "method", "oracle.", method);
    if (method == "grid") c.oracle.method = OracleSettings::Method::Grid;
    else if (method == "refine") c.oracle.method = OracleSettings::Method::Refine;
    else if (method == "grid+refine") c.oracle.method = OracleSettings::Method::GridRefine;
    else rd.errors.push_back("oracle.method: expected grid, refine or grid+refine");
    rd.get(o, "h", "oracle.", c.oracle.h);
    rd.get(o, "r_mult", "oracle.", c.oracle.r_mult);
    rd.get(o, "knots", "oracle.", c.oracle.knots);
    rd.get(o, "iters", "oracle.", c.oracle.iters);
    rd.get(o, "cache", "oracle.", c.oracle.cache);
  }
  rd.get(root, "hausdorff_resolution", "", c.hausdorff_resolution);
  rd.get(root, "rn_probe", "", c.rn_probe);
  rd.get(root, "output", "", c.output);
  rd.get(root, "threads", "", c.threads);

  std::vector<std::string> errs = std::move(rd.errors);
  for (auto& e : validate(c))
    if (std::find(errs.begin(), errs.end(), e) == errs.end()) errs.push_back(std::move(e));
  if (!errs.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: YAML syntax error: ") + e.what());
  }
  return from_yaml(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << c.name;
  out << YAML::Key << "domain" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lo" << YAML::Value << YAML::Flow << c.lo;
  out << YAML::Key << "hi" << YAML::Value << YAML::Flow << c.hi;
  out << YAML::EndMap;
  out << YAML::Key << "kernel" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "family" << YAML::Value << c.kernel.family;
  out << YAML::Key << "p" << YAML::Value << c.kernel.p;
  if (!c.kernel.weight.empty()) out << YAML::Key << "weight" << YAML::Value << c.kernel.weight;
  if (!c.kernel.matrix.empty())
    out << YAML::Key << "matrix" << YAML::Value << YAML::Flow << c.kernel.matrix;
  if (c.kernel.m1) out << YAML::Key << "m1" << YAML::Value << *c.kernel.m1;
  if (c.kernel.m2) out << YAML::Key << "m2" << YAML::Value << *c.kernel.m2;
  if (c.kernel.lip_c) out << YAML::Key << "lip_c" << YAML::Value << *c.kernel.lip_c;
  out << YAML::EndMap;
  out << YAML::Key << "density" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << c.density.kind;
  if (!c.density.rho.empty()) out << YAML::Key << "rho" << YAML::Value << c.density.rho;
  if (c.density.c_lo) out << YAML::Key << "c_lo" << YAML::Value << *c.density.c_lo;
  if (c.density.c_hi) out << YAML::Key << "c_hi" << YAML::Value << *c.density.c_hi;
  out << YAML::EndMap;
  out << YAML::Key << "a" << YAML::Value << YAML::Flow << c.a;
  out << YAML::Key << "b" << YAML::Value << YAML::Flow << c.b;
  out << YAML::Key << "delta" << YAML::Value << c.delta;
  out << YAML::Key << "n_list" << YAML::Value << YAML::Flow << c.n_list;
  out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << c.seeds;
  out << YAML::Key << "costs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (CostType t : c.costs) out << to_string(t);
  out << YAML::EndSeq;
  out << YAML::Key << "hop_cap" << YAML::Value;
  if (c.hop_cap) out << *c.hop_cap;
  else out << "auto";
  out << YAML::Key << "quad_order" << YAML::Value << c.quad_order;
  out << YAML::Key << "local_mode" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value
      << (c.local.kind == LocalMode::Kind::Frozen ? "frozen" : "refined");
  out << YAML::Key << "knots" << YAML::Value << c.local.knots;
  out << YAML::Key << "iters" << YAML::Value << c.local.iters;
  out << YAML::EndMap;
  out << YAML::Key << "oracle" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "method" << YAML::Value << to_string(c.oracle.method);
  out << YAML::Key << "h" << YAML::Value << c.oracle.h;
  out << YAML::Key << "r_mult" << YAML::Value << c.oracle.r_mult;
  out << YAML::Key << "knots" << YAML::Value << c.oracle.knots;
  out << YAML::Key << "iters" << YAML::Value << c.oracle.iters;
  out << YAML::Key << "cache" << YAML::Value << c.oracle.cache;
  out << YAML::EndMap;
  if (c.hausdorff_resolution)
    out << YAML::Key << "hausdorff_resolution" << YAML::Value << *c.hausdorff_resolution;
  out << YAML::Key << "rn_probe" << YAML::Value << c.rn_probe;
  out << YAML::Key << "output" << YAML::Value << c.output;
  out << YAML::Key << "threads" << YAML::Value << c.threads;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace rggeo
