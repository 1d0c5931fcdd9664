#include "rggeo/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "rggeo/error.hpp"

namespace rggeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval widen(Interval r) {
  return {std::nextafter(r.lo, -kInf), std::nextafter(r.hi, kInf)};
}

Interval mul(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r{p[0], p[0]};
  for (double v : p) {
    // 0 * inf is NaN; treat the product as unbounded.
    if (std::isnan(v)) return {-kInf, kInf};
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  }
  return r;
}

Interval pow_int(Interval a, int n) {
  if (n == 0) return {1.0, 1.0};
  if (n < 0) {
    const Interval d = pow_int(a, -n);
    if (d.lo <= 0.0 && d.hi >= 0.0) return {-kInf, kInf};
    return {1.0 / d.hi, 1.0 / d.lo};
  }
  const double plo = std::pow(a.lo, n);
  const double phi = std::pow(a.hi, n);
  if (n % 2 == 1) return {plo, phi};
  if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, std::max(plo, phi)};
  return {std::min(plo, phi), std::max(plo, phi)};
}

}  // namespace

class ExpressionBuilder {
 public:
  using Node = Expression::Node;
  using Op = Expression::Op;

  std::vector<Node> nodes;

  std::uint32_t push(Node n) {
    nodes.push_back(n);
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }
  bool is_const(std::uint32_t i, double v) const {
    return nodes[i].op == Op::Const && nodes[i].value == v;
  }
  bool is_const(std::uint32_t i) const { return nodes[i].op == Op::Const; }

  std::uint32_t constant(double v) { return push({Op::Const, v}); }
  std::uint32_t var(std::uint32_t k) {
    Node n{Op::Var};
    n.var = k;
    return push(n);
  }
  std::uint32_t binary(Op op, std::uint32_t a, std::uint32_t b) {
    if (is_const(a) && is_const(b)) {
      const double x = nodes[a].value, y = nodes[b].value;
      switch (op) {
        case Op::Add: return constant(x + y);
        case Op::Sub: return constant(x - y);
        case Op::Mul: return constant(x * y);
        case Op::Div: if (y != 0.0) return constant(x / y); break;
        default: break;
      }
    }
    switch (op) {
      case Op::Add:
        if (is_const(a, 0.0)) return b;
        if (is_const(b, 0.0)) return a;
        break;
      case Op::Sub:
        if (is_const(b, 0.0)) return a;
        if (is_const(a, 0.0)) return unary(Op::Neg, b);
        break;
      case Op::Mul:
        if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
        if (is_const(a, 1.0)) return b;
        if (is_const(b, 1.0)) return a;
        break;
      case Op::Div:
        if (is_const(a, 0.0)) return constant(0.0);
        if (is_const(b, 1.0)) return a;
        break;
      default: break;
    }
    Node n{op};
    n.a = a;
    n.b = b;
    return push(n);
  }
  std::uint32_t unary(Op op, std::uint32_t a) {
    if (is_const(a)) {
      const double x = nodes[a].value;
      if (op == Op::Neg) return constant(-x);
      if (op == Op::Exp) return constant(std::exp(x));
    }
    if (op == Op::Neg && nodes[a].op == Op::Neg) return nodes[a].a;
    Node n{op};
    n.a = a;
    return push(n);
  }
  std::uint32_t power(std::uint32_t a, double exponent) {
    if (exponent == 0.0) return constant(1.0);
    if (exponent == 1.0) return a;
    if (is_const(a)) return constant(std::pow(nodes[a].value, exponent));
    Node n{Op::Pow, exponent};
    n.a = a;
    return push(n);
  }

  // Keeps only nodes reachable from `root`, preserving topological order.
  std::vector<Node> compact(std::uint32_t root) const {
    std::vector<char> live(nodes.size(), 0);
    live[root] = 1;
    for (std::size_t i = nodes.size(); i-- > 0;) {
      if (!live[i]) continue;
      const Node& n = nodes[i];
      switch (n.op) {
        case Op::Add: case Op::Sub: case Op::Mul: case Op::Div:
          live[n.a] = live[n.b] = 1;
          break;
        case Op::Neg: case Op::Exp: case Op::Pow:
          live[n.a] = 1;
          break;
        default: break;
      }
    }
    std::vector<std::uint32_t> remap(nodes.size(), 0);
    std::vector<Node> out;
    for (std::size_t i = 0; i <= root; ++i) {
      if (!live[i]) continue;
      Node n = nodes[i];
      n.a = remap[n.a];
      n.b = remap[n.b];
      remap[i] = static_cast<std::uint32_t>(out.size());
      out.push_back(n);
    }
    return out;
  }
};

class ExpressionParser {
 public:
  using Op = Expression::Op;

  ExpressionParser(std::string_view text, std::size_t max_dim)
      : text_(text), max_dim_(max_dim) {}

  Expression run() {
    const std::uint32_t root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    Expression e;
    e.text_ = std::string(text_);
    e.nodes_ = b_.compact(root);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("expression '" + std::string(text_) + "': " + why +
                      " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::uint32_t expr() {
    std::uint32_t lhs = term();
    for (;;) {
      if (accept('+')) lhs = b_.binary(Op::Add, lhs, term());
      else if (accept('-')) lhs = b_.binary(Op::Sub, lhs, term());
      else return lhs;
    }
  }
  std::uint32_t term() {
    std::uint32_t lhs = unary();
    for (;;) {
      if (accept('*')) lhs = b_.binary(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = b_.binary(Op::Div, lhs, unary());
      else return lhs;
    }
  }
  std::uint32_t unary() {
    if (accept('-')) return b_.unary(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }
  std::uint32_t power() {
    const std::uint32_t base = primary();
    if (!accept('^')) return base;
    skip_ws();
    bool negative = false;
    if (accept('-')) negative = true;
    skip_ws();
    int n = 0;
    const char* first = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), n);
    if (ec != std::errc() || ptr == first) fail("exponent must be an integer constant");
    pos_ += static_cast<std::size_t>(ptr - first);
    return b_.power(base, negative ? -n : n);
  }
  std::uint32_t primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const std::uint32_t e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = text_.data() + pos_;
      auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
      if (ec != std::errc()) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - first);
      return b_.constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])))
        ++end;
      const std::string_view ident = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (ident == "exp") {
        expect('(');
        const std::uint32_t e = expr();
        expect(')');
        return b_.unary(Op::Exp, e);
      }
      if (ident.size() >= 2 && ident[0] == 'x') {
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), k);
        if (ec == std::errc() && ptr == ident.data() + ident.size() && k >= 1) {
          if (k > max_dim_)
            fail("coordinate x" + std::to_string(k) + " exceeds dimension " +
                 std::to_string(max_dim_));
          return b_.var(static_cast<std::uint32_t>(k - 1));
        }
      }
      fail("unknown identifier '" + std::string(ident) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t max_dim_;
  std::size_t pos_ = 0;
  ExpressionBuilder b_;
};

Expression Expression::parse(std::string_view text, std::size_t max_dim) {
  return ExpressionParser(text, max_dim).run();
}

Expression Expression::constant(double value) {
  Expression e;
  e.text_ = std::to_string(value);
  e.nodes_.push_back({Op::Const, value});
  return e;
}

double Expression::eval(std::span<const double> x) const {
  thread_local std::vector<double> scratch;
  scratch.resize(nodes_.size());
  double* v = scratch.data();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Const: v[i] = n.value; break;
      case Op::Var: v[i] = x[n.var]; break;
      case Op::Add: v[i] = v[n.a] + v[n.b]; break;
      case Op::Sub: v[i] = v[n.a] - v[n.b]; break;
      case Op::Mul: v[i] = v[n.a] * v[n.b]; break;
      case Op::Div: v[i] = v[n.a] / v[n.b]; break;
      case Op::Neg: v[i] = -v[n.a]; break;
      case Op::Exp: v[i] = std::exp(v[n.a]); break;
      case Op::Pow: v[i] = std::pow(v[n.a], n.value); break;
    }
  }
  return nodes_.empty() ? 0.0 : v[nodes_.size() - 1];
}

Interval Expression::eval(std::span<const Interval> box) const {
  std::vector<Interval> v(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    Interval r;
    switch (n.op) {
      case Op::Const: r = {n.value, n.value}; break;
      case Op::Var: r = box[n.var]; break;
      case Op::Add: r = widen({v[n.a].lo + v[n.b].lo, v[n.a].hi + v[n.b].hi}); break;
      case Op::Sub: r = widen({v[n.a].lo - v[n.b].hi, v[n.a].hi - v[n.b].lo}); break;
      case Op::Mul: r = widen(mul(v[n.a], v[n.b])); break;
      case Op::Div: {
        const Interval d = v[n.b];
        if (d.lo <= 0.0 && d.hi >= 0.0) r = {-kInf, kInf};
        else r = widen(mul(v[n.a], {1.0 / d.hi, 1.0 / d.lo}));
        break;
      }
      case Op::Neg: r = {-v[n.a].hi, -v[n.a].lo}; break;
      case Op::Exp: r = widen({std::exp(v[n.a].lo), std::exp(v[n.a].hi)}); break;
      case Op::Pow: r = widen(pow_int(v[n.a], static_cast<int>(n.value))); break;
    }
    v[i] = r;
  }
  return nodes_.empty() ? Interval{} : v.back();
}

Expression Expression::derivative(std::size_t coord) const {
  ExpressionBuilder b;
  b.nodes = nodes_;
  std::vector<std::uint32_t> d(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node n = nodes_[i];
    const auto self = static_cast<std::uint32_t>(i);
    switch (n.op) {
      case Op::Const: d[i] = b.constant(0.0); break;
      case Op::Var: d[i] = b.constant(n.var == coord ? 1.0 : 0.0); break;
      case Op::Add: d[i] = b.binary(Op::Add, d[n.a], d[n.b]); break;
      case Op::Sub: d[i] = b.binary(Op::Sub, d[n.a], d[n.b]); break;
      case Op::Mul:
        d[i] = b.binary(Op::Add, b.binary(Op::Mul, d[n.a], n.b),
                        b.binary(Op::Mul, n.a, d[n.b]));
        break;
      case Op::Div: {
        const std::uint32_t num =
            b.binary(Op::Sub, b.binary(Op::Mul, d[n.a], n.b),
                     b.binary(Op::Mul, n.a, d[n.b]));
        d[i] = b.binary(Op::Div, num, b.power(n.b, 2.0));
        break;
      }
      case Op::Neg: d[i] = b.unary(Op::Neg, d[n.a]); break;
      case Op::Exp: d[i] = b.binary(Op::Mul, self, d[n.a]); break;
      case Op::Pow: {
        const std::uint32_t outer =
            b.binary(Op::Mul, b.constant(n.value), b.power(n.a, n.value - 1.0));
        d[i] = b.binary(Op::Mul, outer, d[n.a]);
        break;
      }
    }
  }
  Expression e;
  e.text_ = "d/dx" + std::to_string(coord + 1) + "(" + text_ + ")";
  if (nodes_.empty()) {
    e.nodes_.push_back({Op::Const, 0.0});
  } else {
    e.nodes_ = b.compact(d.back());
  }
  return e;
}

void for_each_cell(std::span<const double> lo, std::span<const double> hi,
                   std::size_t max_cells,
                   const std::function<void(std::span<const Interval>)>& fn) {
  const std::size_t dim = lo.size();
  std::size_t per_axis = static_cast<std::size_t>(std::floor(
      std::pow(static_cast<double>(max_cells), 1.0 / static_cast<double>(dim)) + 1e-9));
  per_axis = std::max<std::size_t>(per_axis, 1);
  std::vector<std::size_t> idx(dim, 0);
  std::vector<Interval> box(dim);
  for (;;) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double w = (hi[k] - lo[k]) / static_cast<double>(per_axis);
      box[k].lo = lo[k] + w * static_cast<double>(idx[k]);
      box[k].hi = idx[k] + 1 == per_axis ? hi[k]
                                         : lo[k] + w * static_cast<double>(idx[k] + 1);
      box[k] = widen(box[k]);
    }
    fn(box);
    std::size_t k = 0;
    while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dim) break;
  }
}

Interval Expression::bound(std::span<const double> lo, std::span<const double> hi,
                           std::size_t max_cells) const {
  Interval out{kInf, -kInf};
  for_each_cell(lo, hi, max_cells, [&](std::span<const Interval> box) {
    const Interval r = eval(box);
    out.lo = std::min(out.lo, r.lo);
    out.hi = std::max(out.hi, r.hi);
  });
  return out;
}

std::size_t Expression::max_coordinate() const {
  std::size_t m = 0;
  for (const Node& n : nodes_)
    if (n.op == Op::Var) m = std::max<std::size_t>(m, n.var + 1);
  return m;
}

}  // namespace rggeo
