#include "hspace33/tensor.hpp"

#include <stdexcept>

namespace h33 {

Chart::Chart() {
  for (int i = 1; i <= kDimension; ++i) coords_.push_back(Symbol::coordinate(i));
}

const Chart& Chart::standard() {
  static const Chart chart;
  return chart;
}

std::size_t component_count(Valence v) {
  std::size_t n = 1;
  for (int r = 0; r < v.rank(); ++r) n *= kDimension;
  return n;
}

bool PointTensor::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

PointMatrix PointTensor::as_matrix() const {
  if (valence_.rank() != 2) throw std::logic_error("as_matrix on a tensor of rank != 2");
  PointMatrix m(kDimension, kDimension);
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j) m(i, j) = (*this)(i, j);
  return m;
}

TensorField::TensorField(Valence v, std::vector<Expr> components, std::optional<SymmetricPair> symmetry)
    : valence_(v), components_(std::move(components)), symmetry_(symmetry) {
  if (components_.size() != component_count(v)) throw std::invalid_argument("tensor field: wrong component count");
}

TensorField TensorField::zero(Valence v) { return TensorField(v, std::vector<Expr>(component_count(v))); }

TensorField TensorField::symmetric(const std::function<Expr(int, int)>& upper) {
  std::vector<Expr> comps(component_count(kCovariant2));
  for (int i = 0; i < kDimension; ++i)
    for (int j = i; j < kDimension; ++j) {
      comps[flat_index(i, j)] = upper(i, j);
      comps[flat_index(j, i)] = comps[flat_index(i, j)];
    }
  return TensorField(kCovariant2, std::move(comps), SymmetricPair{0, 1});
}

TensorField TensorField::generate(Valence v, const std::function<Expr(std::span<const int>)>& fn) {
  const std::size_t n = component_count(v);
  std::vector<Expr> comps;
  comps.reserve(n);
  std::vector<int> idx(static_cast<std::size_t>(v.rank()), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    for (int r = v.rank() - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(rem % kDimension);
      rem /= kDimension;
    }
    comps.push_back(fn(idx));
  }
  return TensorField(v, std::move(comps));
}

PointTensor TensorField::evaluate(const Point& p) const {
  ExactEvaluator eval(p);
  return evaluate(eval);
}

PointTensor TensorField::evaluate(ExactEvaluator& eval) const {
  PointTensor out(valence_);
  auto values = out.values();
  for (std::size_t i = 0; i < components_.size(); ++i) values[i] = eval(components_[i]);
  return out;
}

bool TensorField::is_structurally_symmetric() const {
  if (valence_.rank() != 2) return false;
  for (int i = 0; i < kDimension; ++i)
    for (int j = i + 1; j < kDimension; ++j)
      if (!simplify((*this)(i, j)).same_as(simplify((*this)(j, i)))) return false;
  return true;
}

namespace {

std::optional<SymmetricPair> common_symmetry(const TensorField& a, const TensorField& b) {
  if (a.symmetry() && b.symmetry() && a.symmetry()->first == b.symmetry()->first &&
      a.symmetry()->second == b.symmetry()->second)
    return a.symmetry();
  return std::nullopt;
}

}  // namespace

TensorField operator+(const TensorField& a, const TensorField& b) {
  if (a.valence_ != b.valence_) throw std::invalid_argument("tensor sum: valence mismatch");
  std::vector<Expr> comps(a.components_.size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = a.components_[i] + b.components_[i];
  return TensorField(a.valence_, std::move(comps), common_symmetry(a, b));
}

TensorField operator-(const TensorField& a, const TensorField& b) { return a + Expr(Rational(-1)) * b; }

TensorField operator*(const Expr& scalar, const TensorField& t) {
  std::vector<Expr> comps(t.components_.size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = scalar * t.components_[i];
  return TensorField(t.valence_, std::move(comps), t.symmetry_);
}

MetricField::MetricField(TensorField g, std::string signature) {
  if (g.valence() != kCovariant2) throw std::invalid_argument("metric must be a (0,2) field");
  if (!g.is_structurally_symmetric()) throw std::invalid_argument("metric must be symmetric");
  auto impl = std::make_shared<Impl>();
  impl->signature = std::move(signature);
  const Chart& chart = Chart::standard();
  impl->d1.resize(component_count(kCovariant3));
  impl->d2.resize(component_count(kMixed13));
  for (int i = 0; i < kDimension; ++i)
    for (int j = i; j < kDimension; ++j) {
      for (int k = 0; k < kDimension; ++k) {
        const Expr d = differentiate(g(i, j), chart.coordinate(k));
        impl->d1[flat_index(k, i, j)] = d;
        impl->d1[flat_index(k, j, i)] = d;
        for (int l = k; l < kDimension; ++l) {
          const Expr dd = differentiate(d, chart.coordinate(l));
          for (auto [a, b] : {std::pair{k, l}, std::pair{l, k}}) {
            impl->d2[flat_index(a, b, i, j)] = dd;
            impl->d2[flat_index(a, b, j, i)] = dd;
          }
        }
      }
    }
  impl->g = std::move(g);
  impl_ = std::move(impl);
}

MetricJet MetricField::jet(const Point& p, int order) const {
  ExactEvaluator eval(p);
  MetricJet jet;
  jet.g = impl_->g.evaluate(eval).as_matrix();
  try {
    jet.inverse = inverse(jet.g);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("singular metric at " + p.to_string() + ": det g = 0");
  }
  const auto& ginv = jet.inverse;

  jet.dg = PointTensor(kCovariant3);
  for (int k = 0; k < kDimension; ++k)
    for (int i = 0; i < kDimension; ++i)
      for (int j = i; j < kDimension; ++j) {
        jet.dg(k, i, j) = eval(partial(k, i, j));
        jet.dg(k, j, i) = jet.dg(k, i, j);
      }

  // Christoffel symbols of the first kind: first(m, j, k) = Gamma_mjk.
  PointTensor first(kCovariant3);
  for (int m = 0; m < kDimension; ++m)
    for (int j = 0; j < kDimension; ++j)
      for (int k = j; k < kDimension; ++k) {
        first(m, j, k) = (jet.dg(j, m, k) + jet.dg(k, m, j) - jet.dg(m, j, k)) / Rational(2);
        first(m, k, j) = first(m, j, k);
      }
  jet.gamma = PointTensor(kMixed12);
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      for (int k = j; k < kDimension; ++k) {
        Rational s(0);
        for (int m = 0; m < kDimension; ++m)
          if (!ginv(i, m).is_zero()) s += ginv(i, m) * first(m, j, k);
        jet.gamma(i, j, k) = s;
        jet.gamma(i, k, j) = s;
      }
  if (order < 2) return jet;

  jet.ddg = PointTensor(Valence{0, 4});
  for (int k = 0; k < kDimension; ++k)
    for (int l = k; l < kDimension; ++l)
      for (int i = 0; i < kDimension; ++i)
        for (int j = i; j < kDimension; ++j) {
          const Rational v = eval(second_partial(k, l, i, j));
          jet.ddg(k, l, i, j) = v;
          jet.ddg(k, l, j, i) = v;
          jet.ddg(l, k, i, j) = v;
          jet.ddg(l, k, j, i) = v;
        }

  // d_l Gamma^i_jk = -g^ia (d_l g_ab) Gamma^b_jk + g^im d_l Gamma_mjk
  jet.dgamma = PointTensor(kMixed13);
  for (int l = 0; l < kDimension; ++l) {
    PointMatrix dgl(kDimension, kDimension);
    for (int a = 0; a < kDimension; ++a)
      for (int b = 0; b < kDimension; ++b) dgl(a, b) = jet.dg(l, a, b);
    const PointMatrix ginv_dg = ginv * dgl;
    for (int j = 0; j < kDimension; ++j)
      for (int k = j; k < kDimension; ++k) {
        std::array<Rational, kDimension> dfirst;
        for (int m = 0; m < kDimension; ++m)
          dfirst[m] = (jet.ddg(l, j, m, k) + jet.ddg(l, k, m, j) - jet.ddg(l, m, j, k)) / Rational(2);
        for (int i = 0; i < kDimension; ++i) {
          Rational s(0);
          for (int m = 0; m < kDimension; ++m) {
            if (!ginv(i, m).is_zero()) s += ginv(i, m) * dfirst[m];
            if (!ginv_dg(i, m).is_zero()) s -= ginv_dg(i, m) * jet.gamma(m, j, k);
          }
          jet.dgamma(i, j, k, l) = s;
          jet.dgamma(i, k, j, l) = s;
        }
      }
  }
  return jet;
}

}  // namespace h33
