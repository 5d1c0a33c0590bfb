#include "hspace33/calculus.hpp"

#include <stdexcept>

namespace h33 {

PointMatrix metric_at(const MetricField& g, const Point& p) { return g.tensor().evaluate(p).as_matrix(); }

PointMatrix inverse_at(const PointMatrix& m) { return inverse(m); }

PointwiseField christoffel(const MetricField& g) {
  return PointwiseField(kMixed12, [g](const Point& p) { return g.jet(p, 1).gamma; });
}

PointTensor riemann_at(const MetricJet& jet) {
  if (jet.dgamma.values().empty()) throw std::invalid_argument("riemann_at needs a second-order jet");
  const auto& G = jet.gamma;
  PointTensor r(kMixed13);
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      for (int k = 0; k < kDimension; ++k)
        for (int l = k + 1; l < kDimension; ++l) {
          Rational s = jet.dgamma(i, j, l, k) - jet.dgamma(i, j, k, l);
          for (int m = 0; m < kDimension; ++m) {
            if (!G(i, m, k).is_zero() && !G(m, j, l).is_zero()) s += G(i, m, k) * G(m, j, l);
            if (!G(i, m, l).is_zero() && !G(m, j, k).is_zero()) s -= G(i, m, l) * G(m, j, k);
          }
          r(i, j, l, k) = -s;
          r(i, j, k, l) = std::move(s);
        }
  return r;
}

PointwiseField riemann(const MetricField& g) {
  return PointwiseField(kMixed13, [g](const Point& p) { return riemann_at(g.jet(p, 2)); });
}

TensorField partials_02(const TensorField& b) {
  if (b.valence() != kCovariant2) throw std::invalid_argument("partials_02 expects a (0,2) field");
  const Chart& chart = Chart::standard();
  return TensorField::generate(kCovariant3, [&](std::span<const int> idx) {
    return differentiate(b(idx[1], idx[2]), chart.coordinate(idx[0]));
  });
}

PointTensor covariant_derivative_at(const PointTensor& b, const PointTensor& db, const MetricJet& jet) {
  const auto& G = jet.gamma;
  PointTensor out(kCovariant3);
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      for (int k = 0; k < kDimension; ++k) {
        Rational s = db(k, i, j);
        for (int m = 0; m < kDimension; ++m) {
          if (!G(m, i, k).is_zero() && !b(m, j).is_zero()) s -= G(m, i, k) * b(m, j);
          if (!G(m, j, k).is_zero() && !b(i, m).is_zero()) s -= G(m, j, k) * b(i, m);
        }
        out(i, j, k) = std::move(s);
      }
  return out;
}

PointwiseField covariant_derivative_02(const TensorField& b, const MetricField& g) {
  if (b.valence() != kCovariant2) throw std::invalid_argument("covariant_derivative_02 expects a (0,2) field");
  TensorField db = partials_02(b);
  return PointwiseField(kCovariant3, [b, db = std::move(db), g](const Point& p) {
    const MetricJet jet = g.jet(p, 1);
    ExactEvaluator eval(p);
    return covariant_derivative_at(b.evaluate(eval), db.evaluate(eval), jet);
  });
}

std::array<Expr, kDimension> gradient(const Expr& f) {
  std::array<Expr, kDimension> out;
  for (int k = 0; k < kDimension; ++k) out[k] = differentiate(f, Chart::standard().coordinate(k));
  return out;
}

std::array<std::array<Expr, kDimension>, kDimension> second_partials(const Expr& f) {
  const auto df = gradient(f);
  std::array<std::array<Expr, kDimension>, kDimension> out;
  for (int j = 0; j < kDimension; ++j)
    for (int l = j; l < kDimension; ++l) {
      out[j][l] = differentiate(df[j], Chart::standard().coordinate(l));
      out[l][j] = out[j][l];
    }
  return out;
}

PointMatrix covariant_hessian_at(const std::array<Rational, kDimension>& df, const PointMatrix& ddf,
                                 const MetricJet& jet) {
  PointMatrix out(kDimension, kDimension);
  for (int j = 0; j < kDimension; ++j)
    for (int l = j; l < kDimension; ++l) {
      Rational s = ddf(j, l);
      for (int m = 0; m < kDimension; ++m)
        if (!df[m].is_zero()) s -= jet.gamma(m, j, l) * df[m];
      out(j, l) = s;
      out(l, j) = s;
    }
  return out;
}

PointwiseField covariant_hessian(const Expr& f, const MetricField& g) {
  return PointwiseField(kCovariant2, [df = gradient(f), ddf = second_partials(f), g](const Point& p) {
    const MetricJet jet = g.jet(p, 1);
    ExactEvaluator eval(p);
    std::array<Rational, kDimension> dfv;
    PointMatrix ddfv(kDimension, kDimension);
    for (int j = 0; j < kDimension; ++j) {
      dfv[j] = eval(df[j]);
      for (int l = 0; l < kDimension; ++l) ddfv(j, l) = eval(ddf[j][l]);
    }
    const PointMatrix h = covariant_hessian_at(dfv, ddfv, jet);
    PointTensor out(kCovariant2);
    for (int j = 0; j < kDimension; ++j)
      for (int l = 0; l < kDimension; ++l) out(j, l) = h(j, l);
    return out;
  });
}

TensorField lie_derivative_metric(const TensorField& xi, const MetricField& g) {
  if (xi.valence() != kVector) throw std::invalid_argument("lie_derivative_metric expects a (1,0) field");
  const Chart& chart = Chart::standard();
  return TensorField::symmetric([&](int i, int j) {
    std::vector<Expr> terms;
    for (int m = 0; m < kDimension; ++m) {
      terms.push_back(xi(m) * g.partial(m, i, j));
      terms.push_back(g(m, j) * differentiate(xi(m), chart.coordinate(i)));
      terms.push_back(g(i, m) * differentiate(xi(m), chart.coordinate(j)));
    }
    return add_all(std::move(terms));
  });
}

PointMatrix endomorphism_at(const TensorField& b, const MetricField& g, const Point& p) {
  ExactEvaluator eval(p);
  const PointMatrix gm = g.tensor().evaluate(eval).as_matrix();
  const PointMatrix bm = b.evaluate(eval).as_matrix();
  PointMatrix ginv;
  try {
    ginv = inverse(gm);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("singular metric at " + p.to_string() + ": det g = 0");
  }
  return ginv * bm;
}

std::vector<Rational> char_poly_at(const TensorField& b, const MetricField& g, const Point& p) {
  return characteristic_polynomial(endomorphism_at(b, g, p));
}

std::array<std::size_t, 3> rank_profile_at(const TensorField& b, const MetricField& g, const Rational& lambda,
                                           const Point& p) {
  PointMatrix shifted = endomorphism_at(b, g, p);
  for (int i = 0; i < kDimension; ++i) shifted(i, i) -= lambda;
  std::array<std::size_t, 3> out{};
  PointMatrix power = shifted;
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = rank(power);
    power = power * shifted;
  }
  return out;
}

}  // namespace h33
