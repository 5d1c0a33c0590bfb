#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "hspace33/expr.hpp"
#include "hspace33/model.hpp"

namespace h33::testing {

inline std::string data_file(const std::string& name) { return std::string(HSPACE33_DATA_DIR) + "/" + name; }

inline Rational random_rational(std::mt19937_64& rng, long magnitude = 50) {
  std::uniform_int_distribution<long> num(-magnitude, magnitude);
  std::uniform_int_distribution<long> den(1, magnitude);
  return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937_64& rng, long magnitude = 50) {
  for (;;) {
    Rational r = random_rational(rng, magnitude);
    if (!r.is_zero()) return r;
  }
}

inline Point random_point(std::mt19937_64& rng, long magnitude = 50) {
  std::array<Rational, kDimension> x;
  for (auto& v : x) v = random_rational(rng, magnitude);
  return Point::coordinates(x);
}

// Random expression over x1..x6 built from the raw node constructors, so the
// smart operators and the simplifier are not involved in building it. Every
// denominator is of the form 1 + u^2, which keeps evaluation pole-free and
// well conditioned.
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth) {
    if (depth <= 0 || pick(4) == 0) return leaf();
    switch (pick(5)) {
      case 0:
        return Expr::sum({(*this)(depth - 1), (*this)(depth - 1), leaf()});
      case 1:
        return Expr::product({(*this)(depth - 1), (*this)(depth - 1)});
      case 2:
        return Expr::quotient((*this)(depth - 1), safe_denominator(depth - 1));
      case 3: {
        Expr base = (*this)(depth - 1);
        const long n = base.is_zero() ? 2 : static_cast<long>(pick(4));
        return Expr::power(std::move(base), n);
      }
      default:
        return Expr::power(safe_denominator(depth - 1), -1 - static_cast<long>(pick(2)));
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Expr leaf() {
    if (pick(3) == 0) return Expr(Rational(pick(11) - 5, 1 + pick(4)));
    return Expr(Symbol::coordinate(1 + pick(kDimension)));
  }

  Expr safe_denominator(int depth) {
    return Expr::sum({Expr(Rational(1)), Expr::power((*this)(depth), 2)});
  }

  std::mt19937_64 rng_;
};

}  // namespace h33::testing
