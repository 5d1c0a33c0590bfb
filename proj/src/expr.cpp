#include "hspace33/expr.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace h33 {

// ---------------------------------------------------------------------------
// Symbol

Symbol Symbol::named(std::string_view name) {
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '6') return coordinate(name[1] - '0');
  return parameter(name);
}

Symbol Symbol::coordinate(int index) {
  if (index < 1 || index > kDimension) throw std::out_of_range("coordinate index must be in 1..6");
  return Symbol("x" + std::to_string(index), SymbolKind::coordinate, index);
}

Symbol Symbol::parameter(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty symbol name");
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '6')
    throw std::invalid_argument("'" + std::string(name) + "' is a coordinate name");
  return Symbol(std::string(name), SymbolKind::parameter, 0);
}

// ---------------------------------------------------------------------------
// Nodes

class ExprNode {
 public:
  ExprKind kind = ExprKind::constant;
  Rational value;
  std::optional<Symbol> symbol;
  std::vector<Expr> operands;
  long exponent = 0;
  std::uint8_t mask = 0;
  bool params = false;
  std::size_t hash = 0;

  static Expr wrap(std::shared_ptr<ExprNode> node) {
    node->finish();
    return Expr(std::shared_ptr<const ExprNode>(std::move(node)));
  }

 private:
  void finish() {
    std::size_t h = std::hash<int>{}(static_cast<int>(kind));
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    switch (kind) {
      case ExprKind::constant:
        mix(value.hash());
        break;
      case ExprKind::symbol:
        mix(std::hash<std::string>{}(symbol->name()));
        if (symbol->is_coordinate())
          mask = static_cast<std::uint8_t>(1u << (symbol->coordinate_index() - 1));
        else
          params = true;
        break;
      default:
        for (const auto& op : operands) {
          mix(op.structural_hash());
          mask |= op.coordinate_mask();
          params = params || op.has_parameters();
        }
        mix(std::hash<long>{}(exponent));
        break;
    }
    hash = h;
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z{Rational(0)};
  return z;
}

}  // namespace

Expr::Expr() : Expr(zero_expr()) {}

Expr::Expr(const Rational& value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::constant;
  n->value = value;
  *this = ExprNode::wrap(std::move(n));
}

Expr::Expr(const Symbol& symbol) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::symbol;
  n->symbol = symbol;
  *this = ExprNode::wrap(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::sum;
  n->operands = std::move(terms);
  return ExprNode::wrap(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::product;
  n->operands = std::move(factors);
  return ExprNode::wrap(std::move(n));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::quotient;
  n->operands = {std::move(numerator), std::move(denominator)};
  return ExprNode::wrap(std::move(n));
}

Expr Expr::power(Expr base, long exponent) {
  if (exponent == 0 && base.is_zero()) throw std::invalid_argument("0^0 is not a valid expression");
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::power;
  n->operands = {std::move(base)};
  n->exponent = exponent;
  return ExprNode::wrap(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }

const Rational& Expr::value() const {
  if (node_->kind != ExprKind::constant) throw std::logic_error("value() on a non-constant expression");
  return node_->value;
}

const Symbol& Expr::symbol() const {
  if (node_->kind != ExprKind::symbol) throw std::logic_error("symbol() on a non-symbol expression");
  return *node_->symbol;
}

std::span<const Expr> Expr::operands() const { return node_->operands; }

long Expr::exponent() const { return node_->exponent; }

bool Expr::is_zero() const { return node_->kind == ExprKind::constant && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == ExprKind::constant && node_->value.is_one(); }

std::uint8_t Expr::coordinate_mask() const { return node_->mask; }
bool Expr::has_parameters() const { return node_->params; }

bool Expr::depends_on(const Symbol& s) const {
  if (s.is_coordinate()) return (node_->mask >> (s.coordinate_index() - 1)) & 1u;
  if (!node_->params) return false;
  if (kind() == ExprKind::symbol) return symbol() == s;
  for (const auto& op : operands())
    if (op.depends_on(s)) return true;
  return false;
}

std::size_t Expr::structural_hash() const { return node_->hash; }

bool Expr::same_as(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case ExprKind::constant:
      return node_->value == other.node_->value;
    case ExprKind::symbol:
      return *node_->symbol == *other.node_->symbol;
    default:
      if (node_->exponent != other.node_->exponent || node_->operands.size() != other.node_->operands.size())
        return false;
      for (std::size_t i = 0; i < node_->operands.size(); ++i)
        if (!node_->operands[i].same_as(other.node_->operands[i])) return false;
      return true;
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(std::ostream& os, const Expr& e);

void print_constant(std::ostream& os, const Rational& r) {
  if (r.sign() >= 0 && r.is_integer())
    os << r;
  else
    os << '(' << r << ')';
}

void print_atom_or_group(std::ostream& os, const Expr& e) {
  const bool atom = e.kind() == ExprKind::symbol || (e.kind() == ExprKind::constant);
  if (atom) {
    print(os, e);
  } else if (e.kind() == ExprKind::sum || e.kind() == ExprKind::quotient) {
    print(os, e);  // already parenthesized
  } else {
    os << '(';
    print(os, e);
    os << ')';
  }
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      print_constant(os, e.value());
      return;
    case ExprKind::symbol:
      os << e.symbol().name();
      return;
    case ExprKind::sum: {
      if (e.operands().empty()) {
        os << "0";
        return;
      }
      os << '(';
      bool first = true;
      for (const auto& t : e.operands()) {
        if (!first) os << " + ";
        first = false;
        print(os, t);
      }
      os << ')';
      return;
    }
    case ExprKind::product: {
      if (e.operands().empty()) {
        os << "1";
        return;
      }
      bool first = true;
      for (const auto& f : e.operands()) {
        if (!first) os << '*';
        first = false;
        if (f.kind() == ExprKind::power || f.kind() == ExprKind::product)
          print_atom_or_group(os, f);
        else
          print(os, f);
      }
      return;
    }
    case ExprKind::quotient:
      os << "((";
      print(os, e.operands()[0]);
      os << ")/(";
      print(os, e.operands()[1]);
      os << "))";
      return;
    case ExprKind::power:
      os << '(';
      print(os, e.operands()[0]);
      os << ")^" << e.exponent();
      return;
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e);
  return os;
}

// ---------------------------------------------------------------------------
// Local simplification

Expr add_all(std::vector<Expr> terms) {
  std::vector<Expr> out;
  Rational constant(0);
  std::function<void(const Expr&)> push = [&](const Expr& t) {
    if (t.kind() == ExprKind::sum) {
      for (const auto& s : t.operands()) push(s);
    } else if (t.is_constant()) {
      constant += t.value();
    } else {
      out.push_back(t);
    }
  };
  for (const auto& t : terms) push(t);
  if (!constant.is_zero()) out.emplace_back(constant);
  if (out.empty()) return Expr(Rational(0));
  if (out.size() == 1) return out.front();
  return Expr::sum(std::move(out));
}

Expr multiply_all(std::vector<Expr> factors) {
  std::vector<Expr> out;
  Rational constant(1);
  std::function<void(const Expr&)> push = [&](const Expr& f) {
    if (f.kind() == ExprKind::product) {
      for (const auto& s : f.operands()) push(s);
    } else if (f.is_constant()) {
      constant *= f.value();
    } else {
      out.push_back(f);
    }
  };
  for (const auto& f : factors) push(f);
  if (constant.is_zero()) return Expr(Rational(0));
  if (!constant.is_one()) out.insert(out.begin(), Expr(constant));
  if (out.empty()) return Expr(Rational(1));
  if (out.size() == 1) return out.front();
  return Expr::product(std::move(out));
}

Expr operator+(const Expr& a, const Expr& b) { return add_all({a, b}); }
Expr operator-(const Expr& a) { return multiply_all({Expr(Rational(-1)), a}); }
Expr operator-(const Expr& a, const Expr& b) { return add_all({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return multiply_all({a, b}); }

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant() && !b.value().is_zero()) return multiply_all({Expr(Rational(1) / b.value()), a});
  if (a.is_zero() && !b.is_zero()) return Expr(Rational(0));
  return Expr::quotient(a, b);
}

Expr pow(const Expr& base, long exponent) {
  if (exponent == 0) {
    if (base.is_zero()) throw std::invalid_argument("0^0 is not a valid expression");
    return Expr(Rational(1));
  }
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.is_zero() && exponent < 0)) return Expr(base.value().pow(exponent));
  if (base.kind() == ExprKind::power) return pow(base.operands()[0], base.exponent() * exponent);
  return Expr::power(base, exponent);
}

namespace {

class Simplifier {
 public:
  Expr run(const Expr& e) {
    if (e.kind() == ExprKind::constant || e.kind() == ExprKind::symbol) return e;
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    std::vector<Expr> ops;
    ops.reserve(e.operands().size());
    for (const auto& op : e.operands()) ops.push_back(run(op));
    Expr out;
    switch (e.kind()) {
      case ExprKind::sum:
        out = add_all(std::move(ops));
        break;
      case ExprKind::product:
        out = multiply_all(std::move(ops));
        break;
      case ExprKind::quotient:
        out = ops[0] / ops[1];
        break;
      case ExprKind::power:
        // The node itself was legal, so e^0 is 1 even if e folds to 0.
        out = e.exponent() == 0 ? Expr(Rational(1)) : pow(ops[0], e.exponent());
        break;
      default:
        out = e;
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  std::unordered_map<const void*, Expr> memo_;
};

class Differentiator {
 public:
  explicit Differentiator(Symbol v) : v_(std::move(v)) {}

  Expr run(const Expr& e) {
    if (!e.depends_on(v_)) return Expr(Rational(0));
    if (e.kind() == ExprKind::symbol) return Expr(Rational(1));
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out;
    const auto ops = e.operands();
    switch (e.kind()) {
      case ExprKind::sum: {
        std::vector<Expr> terms;
        for (const auto& t : ops) terms.push_back(run(t));
        out = add_all(std::move(terms));
        break;
      }
      case ExprKind::product: {
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < ops.size(); ++i) {
          if (!ops[i].depends_on(v_)) continue;
          std::vector<Expr> factors(ops.begin(), ops.end());
          factors[i] = run(ops[i]);
          terms.push_back(multiply_all(std::move(factors)));
        }
        out = add_all(std::move(terms));
        break;
      }
      case ExprKind::quotient: {
        const Expr& u = ops[0];
        const Expr& w = ops[1];
        const Expr du = run(u);
        const Expr dw = run(w);
        out = du / w - (u * dw) / pow(w, 2);
        break;
      }
      case ExprKind::power: {
        const Expr& b = ops[0];
        out = multiply_all({Expr(Rational(e.exponent())), pow(b, e.exponent() - 1), run(b)});
        break;
      }
      default:
        out = Expr(Rational(0));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Symbol v_;
  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr simplify(const Expr& e) { return Simplifier{}.run(e); }

Expr differentiate(const Expr& e, const Symbol& v) {
  if (!v.is_coordinate())
    throw std::invalid_argument("cannot differentiate with respect to parameter '" + v.name() + "'");
  return Differentiator(v).run(e);
}

// ---------------------------------------------------------------------------
// Points and evaluation

Point& Point::bind(const Symbol& s, const Rational& value) {
  if (s.is_coordinate())
    coords_[s.coordinate_index() - 1] = value;
  else
    params_[s.name()] = value;
  return *this;
}

Point& Point::bind_coordinate(int index, const Rational& value) { return bind(Symbol::coordinate(index), value); }

Point Point::coordinates(const std::array<Rational, kDimension>& x) {
  Point p;
  for (int i = 0; i < kDimension; ++i) p.coords_[i] = x[i];
  return p;
}

const Rational* Point::lookup(const Symbol& s) const {
  if (s.is_coordinate()) {
    const auto& slot = coords_[s.coordinate_index() - 1];
    return slot ? &*slot : nullptr;
  }
  auto it = params_.find(s.name());
  return it == params_.end() ? nullptr : &it->second;
}

const Rational& Point::coordinate(int index) const {
  const auto* v = lookup(Symbol::coordinate(index));
  if (!v) throw EvaluationError(EvaluationError::Kind::unbound_symbol, "unbound symbol x" + std::to_string(index));
  return *v;
}

Point Point::with_coordinate(int index, const Rational& value) const {
  Point p = *this;
  p.bind_coordinate(index, value);
  return p;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < kDimension; ++i) {
    if (!coords_[i]) continue;
    if (!first) os << ", ";
    first = false;
    os << 'x' << (i + 1) << '=' << *coords_[i];
  }
  for (const auto& [name, v] : params_) {
    if (!first) os << ", ";
    first = false;
    os << name << '=' << v;
  }
  os << '}';
  return os.str();
}

namespace {

[[noreturn]] void throw_unbound(const Symbol& s) {
  throw EvaluationError(EvaluationError::Kind::unbound_symbol, "unbound symbol '" + s.name() + "'");
}

[[noreturn]] void throw_pole(const char* what) {
  throw EvaluationError(EvaluationError::Kind::division_by_zero, what);
}

}  // namespace

Rational ExactEvaluator::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      return e.value();
    case ExprKind::symbol: {
      const auto* v = point_.lookup(e.symbol());
      if (!v) throw_unbound(e.symbol());
      return *v;
    }
    default:
      break;
  }
  if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
  Rational out;
  const auto ops = e.operands();
  switch (e.kind()) {
    case ExprKind::sum:
      out = Rational(0);
      for (const auto& t : ops) out += (*this)(t);
      break;
    case ExprKind::product:
      out = Rational(1);
      for (const auto& f : ops) out *= (*this)(f);
      break;
    case ExprKind::quotient: {
      const Rational num = (*this)(ops[0]);
      const Rational den = (*this)(ops[1]);
      if (den.is_zero()) throw_pole("division by zero: denominator vanishes at this point");
      out = num / den;
      break;
    }
    case ExprKind::power: {
      const Rational b = (*this)(ops[0]);
      if (b.is_zero() && e.exponent() < 0) throw_pole("division by zero: zero raised to a negative power");
      out = b.pow(e.exponent());
      break;
    }
    default:
      break;
  }
  cache_.emplace(e.id(), std::pair{e, out});
  return out;
}

double FloatEvaluator::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      return e.value().to_double();
    case ExprKind::symbol: {
      const auto* v = point_.lookup(e.symbol());
      if (!v) throw_unbound(e.symbol());
      return v->to_double();
    }
    default:
      break;
  }
  if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
  double out = 0.0;
  const auto ops = e.operands();
  switch (e.kind()) {
    case ExprKind::sum:
      for (const auto& t : ops) out += (*this)(t);
      break;
    case ExprKind::product:
      out = 1.0;
      for (const auto& f : ops) out *= (*this)(f);
      break;
    case ExprKind::quotient: {
      const double num = (*this)(ops[0]);
      const double den = (*this)(ops[1]);
      if (den == 0.0) throw_pole("division by zero: denominator vanishes at this point");
      out = num / den;
      break;
    }
    case ExprKind::power: {
      const double b = (*this)(ops[0]);
      if (b == 0.0 && e.exponent() < 0) throw_pole("division by zero: zero raised to a negative power");
      out = std::pow(b, static_cast<double>(e.exponent()));
      break;
    }
    default:
      break;
  }
  cache_.emplace(e.id(), std::pair{e, out});
  return out;
}

Rational evaluate_exact(const Expr& e, const Point& p) { return ExactEvaluator(p)(e); }

double evaluate_float(const Expr& e, const Point& p) { return FloatEvaluator(p)(e); }

bool equivalent_at(const Expr& e1, const Expr& e2, std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("equivalent_at needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      ExactEvaluator eval(points[i]);
      if (eval(e1) != eval(e2)) return false;
    } catch (const EvaluationError& err) {
      throw EvaluationError(err.kind(), std::string(err.what()) + " (point #" + std::to_string(i) + " " +
                                            points[i].to_string() + ")");
    }
  }
  return true;
}

}  // namespace h33
