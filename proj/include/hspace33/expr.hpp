#pragma once

// Immutable symbolic expressions over the six chart coordinates x1..x6 and
// named parameters, with exact rational constants.
//
// Nodes are shared (a DAG, not a tree): differentiation and the arithmetic
// operators reuse existing subexpressions, and the evaluators memoize by node
// identity, so repeated subterms are computed once per point.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hspace33/rational.hpp"

namespace h33 {

inline constexpr int kDimension = 6;

enum class SymbolKind { coordinate, parameter };

class Symbol {
 public:
  // x1..x6 are coordinates; every other identifier is a parameter.
  static Symbol named(std::string_view name);
  static Symbol coordinate(int index);  // 1-based, 1..6
  static Symbol parameter(std::string_view name);

  const std::string& name() const { return name_; }
  SymbolKind kind() const { return kind_; }
  bool is_coordinate() const { return kind_ == SymbolKind::coordinate; }
  // 1..6 for coordinates, 0 for parameters.
  int coordinate_index() const { return index_; }

  friend bool operator==(const Symbol& a, const Symbol& b) { return a.name_ == b.name_; }
  friend auto operator<=>(const Symbol& a, const Symbol& b) { return a.name_ <=> b.name_; }

 private:
  Symbol(std::string name, SymbolKind kind, int index) : name_(std::move(name)), kind_(kind), index_(index) {}

  std::string name_;
  SymbolKind kind_;
  int index_;
};

enum class ExprKind { constant, symbol, sum, product, quotient, power };

class ExprNode;

class Expr {
 public:
  Expr();  // the constant 0
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(long value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(const Symbol& symbol);  // NOLINT(google-explicit-constructor)

  // Raw node constructors: no rewriting happens here.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(Expr numerator, Expr denominator);
  // Rejects a literal-zero base with exponent 0.
  static Expr power(Expr base, long exponent);

  ExprKind kind() const;
  const Rational& value() const;  // constant only
  const Symbol& symbol() const;   // symbol only
  std::span<const Expr> operands() const;
  long exponent() const;  // power only

  bool is_constant() const { return kind() == ExprKind::constant; }
  bool is_zero() const;  // literal zero constant
  bool is_one() const;   // literal one constant

  // Bit k-1 set iff coordinate xk occurs anywhere in the expression.
  std::uint8_t coordinate_mask() const;
  bool has_parameters() const;
  bool depends_on(const Symbol& s) const;

  // Structural (deep) equality; cheap when nodes are shared.
  bool same_as(const Expr& other) const;
  std::size_t structural_hash() const;
  const void* id() const { return node_.get(); }

  // DSL text that parses back to an equivalent tree.
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  friend class ExprNode;

  std::shared_ptr<const ExprNode> node_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

// Arithmetic with local simplification (constant folding, identities,
// flattening). These are what the rest of the code builds with.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, long exponent);
Expr add_all(std::vector<Expr> terms);
Expr multiply_all(std::vector<Expr> factors);

// Applies the local rewrite rules bottom-up. Never changes the value at a
// point where the input is defined.
Expr simplify(const Expr& e);

// Exact partial derivative. Throws std::invalid_argument for parameter symbols.
Expr differentiate(const Expr& e, const Symbol& v);

class EvaluationError : public std::runtime_error {
 public:
  enum class Kind { division_by_zero, unbound_symbol };
  EvaluationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Total assignment of rational values to symbols.
class Point {
 public:
  Point() = default;

  Point& bind(const Symbol& s, const Rational& value);
  Point& bind_coordinate(int index, const Rational& value);  // 1-based
  static Point coordinates(const std::array<Rational, kDimension>& x);

  const Rational* lookup(const Symbol& s) const;
  const Rational& coordinate(int index) const;  // 1-based; throws if unbound
  Point with_coordinate(int index, const Rational& value) const;

  std::string to_string() const;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::array<std::optional<Rational>, kDimension> coords_;
  std::map<std::string, Rational> params_;
};

// Memoizing exact evaluator bound to one point. Share one across all
// components of a tensor to reuse common subexpressions. The cache holds a
// reference to every node it has seen, so node addresses stay unique keys.
class ExactEvaluator {
 public:
  explicit ExactEvaluator(const Point& p) : point_(p) {}
  Rational operator()(const Expr& e);

 private:
  const Point& point_;
  std::unordered_map<const void*, std::pair<Expr, Rational>> cache_;
};

class FloatEvaluator {
 public:
  explicit FloatEvaluator(const Point& p) : point_(p) {}
  double operator()(const Expr& e);

 private:
  const Point& point_;
  std::unordered_map<const void*, std::pair<Expr, double>> cache_;
};

Rational evaluate_exact(const Expr& e, const Point& p);
double evaluate_float(const Expr& e, const Point& p);

// True iff both expressions take the same exact value at every point.
// Evaluation failures are rethrown with the offending point in the message.
bool equivalent_at(const Expr& e1, const Expr& e2, std::span<const Point> points);

}  // namespace h33
