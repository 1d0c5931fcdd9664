#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rggeo {

/// Closed interval used for rigorous range enclosures.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Small arithmetic expression over coordinates x1..xd.
///
/// Grammar: numbers, x1..xd, + - * /, unary minus, `^` with an integer
/// constant exponent, exp(...), and parentheses. Nodes are stored in
/// topological order (children precede parents) so evaluation is a single
/// forward sweep.
class Expression {
 public:
  Expression() = default;

  /// Parses `text`; coordinates above `max_dim` are rejected with ConfigError.
  static Expression parse(std::string_view text, std::size_t max_dim);
  static Expression constant(double value);

  double eval(std::span<const double> x) const;
  Interval eval(std::span<const Interval> box) const;

  /// Symbolic partial derivative with respect to x_{coord+1}.
  Expression derivative(std::size_t coord) const;

  /// Range enclosure over an axis-aligned box, obtained by subdividing the box
  /// into at most `max_cells` cells and evaluating in interval arithmetic.
  Interval bound(std::span<const double> lo, std::span<const double> hi,
                 std::size_t max_cells = 65536) const;

  const std::string& text() const { return text_; }
  std::size_t max_coordinate() const;  // 0 when no coordinate appears
  bool empty() const { return nodes_.empty(); }

 private:
  enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Pow };
  struct Node {
    Op op;
    double value = 0.0;  // Const value, or Pow exponent
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t var = 0;
  };

  friend class ExpressionParser;
  friend class ExpressionBuilder;

  std::string text_;
  std::vector<Node> nodes_;
};

/// Calls `fn` with the interval box of every cell of a uniform subdivision of
/// [lo, hi] into at most `max_cells` cells.
void for_each_cell(std::span<const double> lo, std::span<const double> hi,
                   std::size_t max_cells,
                   const std::function<void(std::span<const Interval>)>& fn);

}  // namespace rggeo
