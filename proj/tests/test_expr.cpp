#include <cmath>
#include <random>
#include <thread>

#include "doctest.h"
#include "hspace33/expr.hpp"
#include "hspace33/parser.hpp"
#include "support.hpp"

using namespace h33;

namespace {

const Expr x1 = Symbol::coordinate(1);
const Expr x2 = Symbol::coordinate(2);
const Expr x3 = Symbol::coordinate(3);

Point sample_point() { return Point::coordinates({Rational(1, 2), Rational(-3), Rational(2, 5), 1, 0, 7}); }

}  // namespace

TEST_CASE("symbols") {
  CHECK(Symbol::named("x4").is_coordinate());
  CHECK(Symbol::named("x4").coordinate_index() == 4);
  CHECK_FALSE(Symbol::named("x7").is_coordinate());
  CHECK_FALSE(Symbol::named("theta").is_coordinate());
  CHECK(Symbol::named("theta").coordinate_index() == 0);
  CHECK_THROWS(Symbol::coordinate(0));
  CHECK_THROWS(Symbol::coordinate(7));
}

TEST_CASE("smart operators fold constants and identities") {
  CHECK((Expr(2) + Expr(3)).same_as(Expr(5)));
  CHECK((x1 * Expr(0)).is_zero());
  CHECK((x1 * Expr(1)).same_as(x1));
  CHECK((x1 + Expr(0)).same_as(x1));
  CHECK(pow(x1, 0).is_one());
  CHECK(pow(x1, 1).same_as(x1));
  CHECK(pow(pow(x1, 2), 3).same_as(pow(x1, 6)));
  CHECK((x1 / Expr(2)).same_as(Expr(Rational(1, 2)) * x1));
  CHECK(pow(Expr(Rational(2, 3)), -2).same_as(Expr(Rational(9, 4))));
  const Expr nested = (x1 + x2) + (x3 + Expr(1));
  CHECK(nested.kind() == ExprKind::sum);
  CHECK(nested.operands().size() == 4);
}

TEST_CASE("0^0 is rejected at construction") {
  CHECK_THROWS_AS(Expr::power(Expr(0), 0), std::invalid_argument);
  CHECK_THROWS_AS(pow(Expr(0), 0), std::invalid_argument);
  CHECK(Expr::power(x1, 0).kind() == ExprKind::power);
  // A base that only folds to zero later keeps e^0 = 1.
  const Expr late_zero = Expr::power(Expr::product({x1, Expr(0)}), 0);
  CHECK(simplify(late_zero).is_one());
  CHECK(evaluate_exact(late_zero, sample_point()) == Rational(1));
}

TEST_CASE("coordinate mask and dependencies") {
  const Expr e = x1 * pow(x3, 2) + Symbol::parameter("k");
  CHECK(e.coordinate_mask() == 0b101);
  CHECK(e.has_parameters());
  CHECK(e.depends_on(Symbol::coordinate(3)));
  CHECK_FALSE(e.depends_on(Symbol::coordinate(2)));
}

TEST_CASE("exact evaluation examples") {
  const Point p = sample_point();
  CHECK(evaluate_exact(x1 * x2 + pow(x3, 2), p) == Rational(-1, 2) * 3 + Rational(4, 25));
  CHECK(evaluate_exact(x1 / (x2 + Expr(1)), p) == Rational(-1, 4));
  CHECK(evaluate_exact(pow(x3, -2), p) == Rational(25, 4));
  CHECK_THROWS_AS(evaluate_exact(Expr(1) / Expr(Symbol::coordinate(5)), p), EvaluationError);
  try {
    evaluate_exact(Symbol::parameter("k"), p);
    FAIL("expected an unbound-symbol error");
  } catch (const EvaluationError& e) {
    CHECK(e.kind() == EvaluationError::Kind::unbound_symbol);
  }
  Point q = p;
  q.bind(Symbol::parameter("k"), Rational(3));
  CHECK(evaluate_exact(Expr(Symbol::parameter("k")) * x2, q) == Rational(-9));
}

TEST_CASE("division by zero through a quotient node") {
  const Point p = sample_point();
  try {
    evaluate_exact(x1 / Expr(Symbol::coordinate(5)), p);
    FAIL("expected a division-by-zero error");
  } catch (const EvaluationError& e) {
    CHECK(e.kind() == EvaluationError::Kind::division_by_zero);
  }
}

TEST_CASE("equivalent_at reports the failing point") {
  const std::vector<Point> pts{sample_point(), sample_point().with_coordinate(1, Rational(0))};
  CHECK(equivalent_at(x1 * (x2 + x3), x1 * x2 + x1 * x3, pts));
  CHECK_FALSE(equivalent_at(x1 * x2, x1 + x2, pts));
  try {
    equivalent_at(x1 / x1, Expr(1), pts);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(std::string(e.what()).find("point #1") != std::string::npos);
  }
}

TEST_CASE("derivative examples") {
  const Symbol v = Symbol::coordinate(1);
  const Point p = sample_point();
  CHECK(differentiate(pow(x1, 3), v).same_as(Expr(3) * pow(x1, 2)));
  CHECK(differentiate(x2 * x3, v).is_zero());
  CHECK(evaluate_exact(differentiate(Expr(1) / x1, v), p) == Rational(-4));
  CHECK(evaluate_exact(differentiate(x1 * x1 * x2, v), p) == Rational(-3));
  CHECK_THROWS_AS(differentiate(x1, Symbol::parameter("k")), std::invalid_argument);
}

TEST_CASE("printing parses back") {
  const Expr e = Expr(Rational(-2, 3)) * x1 / (x2 - Expr(4)) + pow(x3, -2);
  const Expr back = parse(e.to_string());
  CHECK(equivalent_at(e, back, std::vector<Point>{sample_point()}));
  CHECK(simplify(back).same_as(simplify(e)));
}

TEST_CASE("simplify preserves exact values") {
  testing::ExprGenerator gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr e = gen(4);
    const Point p = testing::random_point(gen.rng(), 20);
    CHECK(evaluate_exact(simplify(e), p) == evaluate_exact(e, p));
  }
}

TEST_CASE("derivatives agree with central finite differences") {
  testing::ExprGenerator gen(99);
  std::uniform_int_distribution<int> coord(1, kDimension);
  constexpr double step = 1e-5;
  int compared = 0;
  while (compared < 100) {
    const Expr e = gen(3);
    const Point p = testing::random_point(gen.rng(), 4);
    const int k = coord(gen.rng());
    const Symbol v = Symbol::coordinate(k);
    const Rational xk = p.coordinate(k);

    // Finite differences at the float nearest each shifted coordinate.
    auto at = [&](double shift) {
      const double x = xk.to_double() + shift;
      mpq_class q(x);
      return evaluate_float(e, p.with_coordinate(k, Rational(q)));
    };
    const double f0 = evaluate_float(e, p);
    if (!std::isfinite(f0) || std::abs(f0) > 1e6) continue;
    const double fd = (at(step) - at(-step)) / (2 * step);
    const double exact = evaluate_float(differentiate(e, v), p);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    ++compared;
  }
}

TEST_CASE("float and exact evaluators agree") {
  testing::ExprGenerator gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr e = gen(3);
    const Point p = testing::random_point(gen.rng(), 10);
    const double exact = evaluate_exact(e, p).to_double();
    CHECK(evaluate_float(e, p) == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("shared trees evaluate concurrently") {
  testing::ExprGenerator gen(11);
  const Expr e = gen(5);
  std::vector<Point> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(testing::random_point(gen.rng(), 20));
  std::vector<Rational> serial;
  for (const auto& p : pts) serial.push_back(evaluate_exact(e, p));
  std::vector<Rational> parallel(pts.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < pts.size(); ++i)
      workers.emplace_back([&, i] { parallel[i] = evaluate_exact(e, pts[i]); });
  }
  CHECK(serial == parallel);
}

TEST_CASE("one evaluator over short-lived expressions") {
  const Point p = sample_point();
  ExactEvaluator eval(p);
  FloatEvaluator feval(p);
  for (long i = 0; i < 50; ++i) {
    CHECK(eval(x1 * x2 + Expr(i)) == Rational(-3, 2) + Rational(i));
    CHECK(feval(x1 + Expr(i)) == doctest::Approx(0.5 + static_cast<double>(i)));
  }
}
