#pragma once

// Tensor fields on the 6-dimensional chart (x1..x6). Indices are 0-based in
// code; component (i, j) here is g_{i+1 j+1} in 1-based notation.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hspace33/expr.hpp"
#include "hspace33/linalg.hpp"

namespace h33 {

class Chart {
 public:
  static const Chart& standard();

  int dimension() const { return kDimension; }
  const Symbol& coordinate(int i) const { return coords_[static_cast<std::size_t>(i)]; }  // 0-based

 private:
  Chart();
  std::vector<Symbol> coords_;
};

struct Valence {
  int contravariant = 0;
  int covariant = 0;
  int rank() const { return contravariant + covariant; }
  friend bool operator==(const Valence&, const Valence&) = default;
};

inline constexpr Valence kScalar{0, 0};
inline constexpr Valence kVector{1, 0};
inline constexpr Valence kCovariant2{0, 2};
inline constexpr Valence kMixed12{1, 2};
inline constexpr Valence kCovariant3{0, 3};
inline constexpr Valence kMixed13{1, 3};

std::size_t component_count(Valence v);

template <class... I>
constexpr std::size_t flat_index(I... idx) {
  std::size_t out = 0;
  ((out = out * kDimension + static_cast<std::size_t>(idx)), ...);
  return out;
}

// Exact component values of a tensor at one point.
class PointTensor {
 public:
  PointTensor() = default;
  explicit PointTensor(Valence v) : valence_(v), data_(component_count(v), Rational(0)) {}

  Valence valence() const { return valence_; }

  template <class... I>
  Rational& operator()(I... idx) {
    return data_[flat_index(idx...)];
  }
  template <class... I>
  const Rational& operator()(I... idx) const {
    return data_[flat_index(idx...)];
  }

  std::span<const Rational> values() const { return data_; }
  std::span<Rational> values() { return data_; }
  bool is_zero() const;

  // Only for rank-2 tensors.
  PointMatrix as_matrix() const;

 private:
  Valence valence_;
  std::vector<Rational> data_;
};

// Index positions (0-based) that a field is symmetric under.
struct SymmetricPair {
  int first = 0;
  int second = 1;
};

class TensorField {
 public:
  TensorField() = default;
  TensorField(Valence v, std::vector<Expr> components, std::optional<SymmetricPair> symmetry = std::nullopt);

  static TensorField zero(Valence v);
  // Builds a symmetric (0,2) field from its upper triangle; the lower
  // triangle shares the same expression nodes.
  static TensorField symmetric(const std::function<Expr(int, int)>& upper);
  static TensorField generate(Valence v, const std::function<Expr(std::span<const int>)>& fn);

  const Chart& chart() const { return Chart::standard(); }
  Valence valence() const { return valence_; }
  std::optional<SymmetricPair> symmetry() const { return symmetry_; }
  std::span<const Expr> components() const { return components_; }

  template <class... I>
  const Expr& operator()(I... idx) const {
    return components_[flat_index(idx...)];
  }

  PointTensor evaluate(const Point& p) const;
  PointTensor evaluate(ExactEvaluator& eval) const;

  // Structural symmetry check for rank-2 fields.
  bool is_structurally_symmetric() const;

  friend TensorField operator+(const TensorField& a, const TensorField& b);
  friend TensorField operator-(const TensorField& a, const TensorField& b);
  friend TensorField operator*(const Expr& scalar, const TensorField& t);

 private:
  Valence valence_;
  std::vector<Expr> components_;
  std::optional<SymmetricPair> symmetry_;
};

// Values of the metric and its partial derivatives at one point, plus the
// Christoffel symbols derived from them.
struct MetricJet {
  PointMatrix g;
  PointMatrix inverse;
  PointTensor dg;      // dg(k, i, j) = d_k g_ij
  PointTensor ddg;     // ddg(k, l, i, j) = d_k d_l g_ij  (order 2 only)
  PointTensor gamma;   // gamma(i, j, k) = Gamma^i_jk
  PointTensor dgamma;  // dgamma(i, j, k, l) = d_l Gamma^i_jk  (order 2 only)
};

// Symmetric, nondegenerate (checked per point) (0,2) field with its
// symbolic first and second partial derivatives precomputed.
class MetricField {
 public:
  explicit MetricField(TensorField g, std::string signature = {});

  const TensorField& tensor() const { return impl_->g; }
  const Expr& operator()(int i, int j) const { return impl_->g(i, j); }
  const std::string& signature() const { return impl_->signature; }
  const Expr& partial(int k, int i, int j) const { return impl_->d1[flat_index(k, i, j)]; }
  const Expr& second_partial(int k, int l, int i, int j) const { return impl_->d2[flat_index(k, l, i, j)]; }

  // order 1: g, inverse, dg, gamma. order 2 adds ddg and dgamma.
  // Throws SingularMatrixError when det g vanishes at p.
  MetricJet jet(const Point& p, int order = 1) const;

 private:
  struct Impl {
    TensorField g;
    std::string signature;
    std::vector<Expr> d1;
    std::vector<Expr> d2;
  };
  std::shared_ptr<const Impl> impl_;
};

// A field known only through exact pointwise evaluation (Christoffel symbols,
// curvature, covariant derivatives): inversion of the metric happens per point.
class PointwiseField {
 public:
  using Evaluator = std::function<PointTensor(const Point&)>;
  PointwiseField(Valence v, Evaluator eval) : valence_(v), eval_(std::move(eval)) {}

  Valence valence() const { return valence_; }
  PointTensor at(const Point& p) const { return eval_(p); }

 private:
  Valence valence_;
  Evaluator eval_;
};

}  // namespace h33
