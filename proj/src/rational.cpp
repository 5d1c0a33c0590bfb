#include "hspace33/rational.hpp"

#include <cctype>
#include <functional>

namespace h33 {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DivisionByZeroError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class integer_from(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_text(num_text)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  mpz_class num = integer_from(num_text);
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_text(den_text) || den_text[0] == '-' || den_text[0] == '+')
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    den = integer_from(den_text);
    if (den == 0) throw DivisionByZeroError("rational with zero denominator: '" + std::string(text) + "'");
  }
  return Rational(mpq_class(num, den));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DivisionByZeroError("zero raised to a negative power");
    return Rational(1) / pow(-exponent);
  }
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

std::size_t Rational::hash() const {
  // Low limbs are enough to spread values; equality is decided elsewhere.
  const auto num = mpz_get_si(value_.get_num_mpz_t());
  const auto den = mpz_get_si(value_.get_den_mpz_t());
  return std::hash<long>{}(num) * 1000003u ^ std::hash<long>{}(den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace h33
