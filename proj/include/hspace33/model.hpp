#pragma once

// The six-dimensional h-space of Segre type [33]: metric g, tensor a,
// defining function phi, deformation h = a + 3(f3 + f6 + c) g, and the
// auxiliary functions they are built from.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hspace33/expr.hpp"
#include "hspace33/tensor.hpp"

namespace h33 {

// A violated parameter constraint; clause() names it, e.g. "a != 0 when epst = 0".
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(std::string clause)
      : std::invalid_argument("parameter constraint violated: " + clause), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

// Malformed parameter file (syntax, unknown key, bad value).
class ParameterFileError : public std::runtime_error {
 public:
  ParameterFileError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct HSpaceParams {
  int e3 = 1;
  int e6 = 1;
  int eps = 1;
  int epst = 1;
  Rational a{1};
  Rational c{0};
  Expr theta{Rational(1)};  // function of x3 only
  Expr omega{Rational(1)};  // function of x6 only

  // Throws ParameterError naming the first violated clause.
  void validate() const;

  // key = value lines, parseable by parse_params.
  std::string to_text() const;
};

// Parses "key = value" lines (keys e3, e6, eps, epst, a, c, theta, omega;
// '#' starts a comment). Missing keys keep their defaults. Does not validate.
HSpaceParams parse_params(std::string_view text);
HSpaceParams load_params(const std::filesystem::path& path);

struct HSpaceAux {
  Expr f3;      // eps x3
  Expr f6;      // epst x6 + a
  Expr A;       // eps x2 + theta(x3)
  Expr Atilde;  // epst x5 + omega(x6)
  Expr sigma1;  // 3 (f6 - f3)^-1
  Expr sigma2;  // 3 (f6 - f3)^-2
};

struct HSpaceModel {
  HSpaceParams params;
  MetricField g;
  TensorField a_tensor;
  Expr phi;
  TensorField h;
  HSpaceAux aux;
};

// Validates params, then builds every field component by component.
HSpaceModel build_model(const HSpaceParams& params);

bool is_flat_configuration(const HSpaceParams& params);

struct SampleStrategy {
  std::uint64_t seed = 42;
  int count = 20;
  int magnitude = 50;
  int max_rejections = 10000;
};

class SamplingExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point certified to lie off the loci f3 = f6, A = 0, Atilde = 0, det g = 0,
// and where every model field evaluates without a pole.
class RegularPoint {
 public:
  static std::optional<RegularPoint> certify(const HSpaceModel& model, const Point& p);

  const Point& point() const { return point_; }
  operator const Point&() const { return point_; }  // NOLINT(google-explicit-constructor)

 private:
  explicit RegularPoint(Point p) : point_(std::move(p)) {}
  Point point_;
};

// Deterministic rejection sampling: coordinates are p/q with |p| <= magnitude,
// 1 <= q <= magnitude, drawn from a generator seeded with strategy.seed.
std::vector<RegularPoint> sample_regular_points(const HSpaceModel& model, const SampleStrategy& strategy);

std::vector<Point> as_points(const std::vector<RegularPoint>& points);

// Index pairs (0-based) whose component simplifies to the zero expression.
// When points are given, each such component is also confirmed to vanish there.
std::set<std::pair<int, int>> zero_pattern(const TensorField& t, std::span<const Point> points = {});

// (positive, negative) eigenvalue counts of g at p, via exact congruence.
std::pair<int, int> signature_at(const MetricField& g, const Point& p);

}  // namespace h33
