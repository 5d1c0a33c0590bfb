#include "hspace33/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "hspace33/calculus.hpp"

namespace h33 {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

CheckStatus check_status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped") return CheckStatus::skipped;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

namespace {

template <class... I>
std::string label(I... idx) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  ((os << (first ? "" : ",") << (idx + 1), first = false), ...);
  os << ')';
  return os.str();
}

// What one point contributes to a check.
struct PointOutcome {
  struct Failure {
    std::string component;
    std::string value;
  };
  std::vector<Failure> failures;  // capped
  std::size_t failure_count = 0;
  std::optional<std::string> skipped;  // reason
  std::vector<std::pair<std::string, std::string>> measurements;
  std::size_t cap = 10;

  void fail(std::string component, std::string value) {
    ++failure_count;
    if (failures.size() < cap) failures.push_back({std::move(component), std::move(value)});
  }
  void fail(std::string component, const Rational& value) { fail(std::move(component), value.to_string()); }
  void measure(std::string key, std::string value) { measurements.emplace_back(std::move(key), std::move(value)); }
};

using PointKernel = std::function<void(const Point&, PointOutcome&)>;

// Runs the kernel on every point, concurrently, and aggregates in point order.
CheckResult run_pointwise(std::string name, std::span<const Point> points, const VerifyOptions& options,
                          const PointKernel& kernel) {
  std::vector<PointOutcome> outcomes(points.size());
  for (auto& o : outcomes) o.cap = options.max_witnesses;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        kernel(points[i], outcomes[i]);
      } catch (const SingularMatrixError& e) {
        outcomes[i].fail("-", std::string("singular metric: ") + e.what());
      } catch (const std::exception& e) {
        outcomes[i].fail("-", std::string("evaluation error: ") + e.what());
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CheckResult result;
  result.name = std::move(name);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.skipped) {
      result.notes.push_back("point " + std::to_string(i) + " skipped: " + *o.skipped);
      continue;
    }
    ++result.points_checked;
    result.failure_count += o.failure_count;
    for (const auto& f : o.failures) {
      if (result.witnesses.size() >= options.max_witnesses) break;
      result.witnesses.push_back({i, points[i].to_string(), f.component, f.value});
    }
    for (const auto& [k, v] : o.measurements) result.measurements[k].push_back(v);
  }
  if (result.failure_count > 0)
    result.status = CheckStatus::fail;
  else if (result.points_checked == 0) {
    result.status = CheckStatus::skipped;
    result.skip_reason = "no point could be checked";
  }
  return result;
}

CheckResult skipped(std::string name, std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::skipped;
  r.skip_reason = std::move(reason);
  return r;
}

std::array<Rational, kDimension> evaluate_all(ExactEvaluator& eval, const std::array<Expr, kDimension>& es) {
  std::array<Rational, kDimension> out;
  for (int i = 0; i < kDimension; ++i) out[i] = eval(es[i]);
  return out;
}

PointMatrix evaluate_all(ExactEvaluator& eval, const std::array<std::array<Expr, kDimension>, kDimension>& es) {
  PointMatrix out(kDimension, kDimension);
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j) out(i, j) = eval(es[i][j]);
  return out;
}

// Coefficient of K in the constant-curvature form K (delta^i_k g_jl - delta^i_l g_jk).
Rational constant_curvature_coefficient(const PointMatrix& g, int i, int j, int k, int l) {
  Rational c(0);
  if (i == k) c += g(j, l);
  if (i == l) c -= g(j, k);
  return c;
}

std::string riemann_label(int i, int j, int k, int l) {
  return "R^" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + std::to_string(k + 1) + std::to_string(l + 1);
}

// A component pair that no single K can satisfy, or nullopt if the point is
// consistent with constant curvature.
std::optional<std::string> non_constant_curvature_witness(const PointTensor& R, const PointMatrix& g, int eps,
                                                          int epst) {
  using Idx = std::array<int, 4>;
  auto inconsistent = [&](const Idx& a, const Idx& b) {
    const Rational ra = R(a[0], a[1], a[2], a[3]);
    const Rational rb = R(b[0], b[1], b[2], b[3]);
    const Rational ca = constant_curvature_coefficient(g, a[0], a[1], a[2], a[3]);
    const Rational cb = constant_curvature_coefficient(g, b[0], b[1], b[2], b[3]);
    return ra * cb != rb * ca || (ca.is_zero() && !ra.is_zero()) || (cb.is_zero() && !rb.is_zero());
  };
  auto describe = [&](const Idx& a, const Idx& b) {
    return riemann_label(a[0], a[1], a[2], a[3]) + "=" + R(a[0], a[1], a[2], a[3]).to_string() + " vs " +
           riemann_label(b[0], b[1], b[2], b[3]) + "=" + R(b[0], b[1], b[2], b[3]).to_string();
  };
  // Constant curvature forces R^2_123 = R^6_163 and R^5_456 = R^3_436.
  if (eps != 0 && inconsistent({1, 0, 1, 2}, {5, 0, 5, 2})) return describe({1, 0, 1, 2}, {5, 0, 5, 2});
  if (epst != 0 && inconsistent({4, 3, 4, 5}, {2, 3, 2, 5})) return describe({4, 3, 4, 5}, {2, 3, 2, 5});

  std::optional<Idx> reference;
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      for (int k = 0; k < kDimension; ++k)
        for (int l = 0; l < kDimension; ++l) {
          const Idx cur{i, j, k, l};
          const Rational c = constant_curvature_coefficient(g, i, j, k, l);
          if (c.is_zero()) {
            if (!R(i, j, k, l).is_zero()) return riemann_label(i, j, k, l) + "=" + R(i, j, k, l).to_string() +
                                                  " where constant curvature forces 0";
            continue;
          }
          if (!reference) {
            reference = cur;
          } else if (inconsistent(*reference, cur)) {
            return describe(*reference, cur);
          }
        }
  return std::nullopt;
}

}  // namespace

CheckResult check_eisenhart(const HSpaceModel& model, const TensorField& b, const Expr& psi,
                            std::span<const Point> points, const VerifyOptions& options, std::string name) {
  const TensorField db = partials_02(b);
  const auto dpsi = gradient(psi);
  return run_pointwise(std::move(name), points, options, [&](const Point& p, PointOutcome& out) {
    const MetricJet jet = model.g.jet(p, 1);
    ExactEvaluator eval(p);
    const PointTensor cov = covariant_derivative_at(b.evaluate(eval), db.evaluate(eval), jet);
    const auto grad = evaluate_all(eval, dpsi);
    const PointMatrix& g = jet.g;
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j)
        for (int k = 0; k < kDimension; ++k) {
          const Rational r = cov(i, j, k) - Rational(2) * g(i, j) * grad[k] - g(i, k) * grad[j] - g(j, k) * grad[i];
          if (!r.is_zero()) out.fail(label(i, j, k), r);
        }
  });
}

CheckResult check_integrability(const HSpaceModel& model, const TensorField& b, const Expr& psi,
                                std::span<const Point> points, const VerifyOptions& options, std::string name) {
  const auto dpsi = gradient(psi);
  const auto ddpsi = second_partials(psi);
  return run_pointwise(std::move(name), points, options, [&](const Point& p, PointOutcome& out) {
    const MetricJet jet = model.g.jet(p, 2);
    const PointTensor R = riemann_at(jet);
    ExactEvaluator eval(p);
    const PointMatrix bv = b.evaluate(eval).as_matrix();
    const PointMatrix H = covariant_hessian_at(evaluate_all(eval, dpsi), evaluate_all(eval, ddpsi), jet);
    const PointMatrix& g = jet.g;
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j)
        for (int k = 0; k < kDimension; ++k)
          for (int l = 0; l < kDimension; ++l) {
            Rational lhs(0);
            for (int m = 0; m < kDimension; ++m) {
              if (!bv(m, i).is_zero()) lhs += bv(m, i) * R(m, j, k, l);
              if (!bv(m, j).is_zero()) lhs += bv(m, j) * R(m, i, k, l);
            }
            const Rational rhs = g(i, k) * H(j, l) + g(j, k) * H(i, l) - g(l, i) * H(j, k) - g(l, j) * H(i, k);
            if (lhs != rhs) out.fail(label(i, j, k, l), lhs - rhs);
          }
  });
}

CheckResult check_curvature(const HSpaceModel& model, std::span<const Point> points, const VerifyOptions& options) {
  const int eps = model.params.eps;
  const int epst = model.params.epst;
  const bool flat = is_flat_configuration(model.params);
  auto result = run_pointwise("curvature", points, options, [&](const Point& p, PointOutcome& out) {
    const MetricJet jet = model.g.jet(p, 2);
    const PointTensor R = riemann_at(jet);
    ExactEvaluator eval(p);
    const Rational expected1 = Rational(3 * eps * eps, 8) / eval(model.aux.A);
    const Rational expected2 = Rational(3 * epst * epst, 8) / eval(model.aux.Atilde);
    if (R(1, 0, 1, 2) != expected1)
      out.fail("R^2_123", R(1, 0, 1, 2).to_string() + " (expected " + expected1.to_string() + ")");
    if (R(4, 3, 4, 5) != expected2)
      out.fail("R^5_456", R(4, 3, 4, 5).to_string() + " (expected " + expected2.to_string() + ")");
    std::size_t nonzero = 0;
    for (const auto& v : R.values()) nonzero += v.is_zero() ? 0 : 1;
    out.measure("nonzero_components", std::to_string(nonzero));
    if (flat) {
      for (int i = 0; i < kDimension; ++i)
        for (int j = 0; j < kDimension; ++j)
          for (int k = 0; k < kDimension; ++k)
            for (int l = 0; l < kDimension; ++l)
              if (!R(i, j, k, l).is_zero()) out.fail(riemann_label(i, j, k, l), R(i, j, k, l));
    } else if (auto w = non_constant_curvature_witness(R, jet.g, eps, epst)) {
      out.measure("non_constant_curvature_witness", *w);
    } else {
      out.fail("constant-curvature form", "no violating component pair found");
    }
  });
  result.notes.push_back(flat ? "flat configuration: every curvature component must vanish"
                              : "non-flat configuration: constant-curvature form must fail at every point");
  if (flat && result.status == CheckStatus::pass)
    result.notes.push_back("all " + std::to_string(component_count(kMixed13)) + " components of R^i_jkl are zero at " +
                           std::to_string(result.points_checked) + " points");
  return result;
}

CheckResult solve_parallel_pointwise(const HSpaceModel& model, std::span<const Point> points,
                                     const VerifyOptions& options) {
  if (is_flat_configuration(model.params))
    return skipped("parallel", "curvature identically zero; the rigidity statement needs nonzero curvature");

  // Unknowns: the 21 components b_pq, p <= q.
  std::array<std::array<int, kDimension>, kDimension> unknown{};
  int n_unknowns = 0;
  for (int p = 0; p < kDimension; ++p)
    for (int q = p; q < kDimension; ++q) unknown[p][q] = unknown[q][p] = n_unknowns++;
  const auto metric_zeros = zero_pattern(model.g.tensor());

  auto result = run_pointwise("parallel", points, options, [&](const Point& p, PointOutcome& out) {
    MetricJet jet;
    try {
      jet = model.g.jet(p, 2);
    } catch (const SingularMatrixError& e) {
      out.skipped = e.what();
      return;
    }
    const PointTensor R = riemann_at(jet);
    // Rows are symmetric in (i, j) and antisymmetric in (k, l): keep i <= j, k < l.
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < kDimension; ++i)
      for (int j = i; j < kDimension; ++j)
        for (int k = 0; k < kDimension; ++k)
          for (int l = k + 1; l < kDimension; ++l) {
            std::vector<Rational> row(static_cast<std::size_t>(n_unknowns), Rational(0));
            bool any = false;
            for (int m = 0; m < kDimension; ++m) {
              if (!R(m, j, k, l).is_zero()) row[unknown[m][i]] += R(m, j, k, l), any = true;
              if (!R(m, i, k, l).is_zero()) row[unknown[m][j]] += R(m, i, k, l), any = true;
            }
            if (any) rows.push_back(std::move(row));
          }
    RationalMatrix system(rows.size(), static_cast<std::size_t>(n_unknowns));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < n_unknowns; ++c) system(r, c) = rows[r][c];
    const auto basis = nullspace(system);
    out.measure("nullspace_dimension", std::to_string(basis.size()));

    // g(p) must solve the system.
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rational s(0);
      for (int a = 0; a < kDimension; ++a)
        for (int b = a; b < kDimension; ++b) s += rows[r][unknown[a][b]] * jet.g(a, b);
      if (!s.is_zero()) {
        out.fail("g(p) in nullspace", "row " + std::to_string(r) + " residual " + s.to_string());
        break;
      }
    }
    for (std::size_t v = 0; v < basis.size(); ++v)
      for (const auto& [a, b] : metric_zeros)
        if (a <= b && !basis[v][unknown[a][b]].is_zero())
          out.fail("nullspace vector " + std::to_string(v) + " at b" + label(a, b), basis[v][unknown[a][b]]);

    // Is the nullspace exactly span{g(p)}?
    if (basis.size() == 1) {
      std::optional<Rational> ratio;
      bool proportional = true;
      for (int a = 0; a < kDimension && proportional; ++a)
        for (int b = a; b < kDimension && proportional; ++b) {
          const Rational& bv = basis[0][unknown[a][b]];
          if (jet.g(a, b).is_zero() != bv.is_zero()) {
            proportional = false;
          } else if (!bv.is_zero()) {
            const Rational r = bv / jet.g(a, b);
            if (ratio && *ratio != r) proportional = false;
            ratio = r;
          }
        }
      out.measure("nullspace_is_span_of_g", proportional ? "true" : "false");
    } else {
      out.measure("nullspace_is_span_of_g", "false");
    }
  });
  result.notes.push_back(
      "pointwise algebraic conditions only; global parallelism and the affine/projective group statements built "
      "on it are not checked");
  return result;
}

CheckResult check_defining_function(const HSpaceModel& model, std::span<const Point> points,
                                    const VerifyOptions& options) {
  const auto dphi = gradient(model.phi);
  const auto ddphi = second_partials(model.phi);
  const auto metric_zeros = zero_pattern(model.g.tensor());
  const Rational eps(static_cast<long>(model.params.eps));
  const Rational epst(static_cast<long>(model.params.epst));
  // Sum of the six f_i with multiplicity three each: f1=f2=f3=eps x3, f4=f5=f6=epst x6 + a.
  const Expr from_sum =
      Expr(Rational(1, 2)) * (Expr(3) * model.aux.f3 + Expr(3) * model.aux.f6) + Expr(model.params.c);

  std::vector<std::string> gradient_failures;
  for (int k : {0, 1, 3, 4})
    if (!simplify(dphi[k]).is_zero()) gradient_failures.push_back("phi_" + std::to_string(k + 1));

  auto result = run_pointwise("defining", points, options, [&](const Point& p, PointOutcome& out) {
    for (const auto& f : gradient_failures) out.fail(f, "not the zero expression");
    const MetricJet jet = model.g.jet(p, 1);
    ExactEvaluator eval(p);
    const auto grad = evaluate_all(eval, dphi);
    if (epst * grad[2] != eps * grad[5])
      out.fail("epst*phi_3 - eps*phi_6", epst * grad[2] - eps * grad[5]);
    const PointMatrix H = covariant_hessian_at(grad, evaluate_all(eval, ddphi), jet);
    for (const auto& [a, b] : metric_zeros)
      if (!H(a, b).is_zero()) out.fail("phi;" + label(a, b), H(a, b));
    const Rational lhs = eval(from_sum);
    const Rational rhs = eval(model.phi);
    if (lhs != rhs) out.fail("sum-of-f consistency", lhs - rhs);
    out.measure("phi_3", grad[2].to_string());
    out.measure("phi_6", grad[5].to_string());
  });
  result.notes.push_back("sum-of-f consistency reads f1=f2=f3=eps*x3 and f4=f5=f6=epst*x6+a (multiplicity three)");
  return result;
}

CheckResult check_segre(const HSpaceModel& model, std::span<const Point> points, const VerifyOptions& options) {
  const std::array<std::size_t, 3> jordan3{5, 4, 3};
  auto fmt = [](const std::array<std::size_t, 3>& r) {
    return std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]);
  };
  return run_pointwise("segre", points, options, [&](const Point& p, PointOutcome& out) {
    ExactEvaluator eval(p);
    const Rational l3 = eval(model.aux.f3);
    const Rational l6 = eval(model.aux.f6);
    const Rational shift = Rational(3) * (l3 + l6 + model.params.c);
    struct Case {
      const char* name;
      const TensorField* b;
      Rational offset;
    };
    for (const Case& c : {Case{"a", &model.a_tensor, Rational(0)}, Case{"h", &model.h, shift}}) {
      const Rational r3 = l3 + c.offset;
      const Rational r6 = l6 + c.offset;
      const auto poly = char_poly_at(*c.b, model.g, p);
      if (poly != polynomial_from_roots({r3, r3, r3, r6, r6, r6})) {
        std::string coeffs;
        for (const auto& v : poly) coeffs += (coeffs.empty() ? "" : ",") + v.to_string();
        out.fail(std::string("charpoly(g^-1 ") + c.name + ")", coeffs);
      }
      if (r3 == r6) {
        out.fail(std::string("eigenvalues of g^-1 ") + c.name, "coincide: " + r3.to_string());
        continue;
      }
      for (const auto& [root, tag] : {std::pair{r3, "lambda3"}, std::pair{r6, "lambda6"}}) {
        const auto prof = rank_profile_at(*c.b, model.g, root, p);
        out.measure(std::string("rank_profile_") + c.name + "_" + tag, fmt(prof));
        if (prof != jordan3)
          out.fail(std::string("rank profile g^-1 ") + c.name + " at " + tag, fmt(prof) + " (expected 5,4,3)");
      }
    }
  });
}

CheckResult check_linearity(const HSpaceModel& model, std::span<const Point> points,
                            const std::vector<std::pair<Rational, Rational>>& coefficients,
                            const VerifyOptions& options) {
  CheckResult result;
  result.name = "linearity";
  for (const auto& [a1, a2] : coefficients) {
    const TensorField b = Expr(a1) * model.h + Expr(a2) * model.g.tensor();
    const Expr psi = Expr(a1) * model.phi;
    const CheckResult sub = check_eisenhart(model, b, psi, points, options, "linearity");
    const std::string tag = "a1=" + a1.to_string() + " a2=" + a2.to_string();
    result.measurements["coefficients"].push_back(tag);
    result.points_checked = std::max(result.points_checked, sub.points_checked);
    result.failure_count += sub.failure_count;
    for (auto w : sub.witnesses) {
      if (result.witnesses.size() >= options.max_witnesses) break;
      w.component = tag + " " + w.component;
      result.witnesses.push_back(std::move(w));
    }
  }
  result.status = result.failure_count ? CheckStatus::fail : CheckStatus::pass;
  return result;
}

CheckResult check_engine_invariants(const HSpaceModel& model, std::span<const Point> points,
                                    const VerifyOptions& options) {
  const TensorField dg = partials_02(model.g.tensor());
  return run_pointwise("engine_invariants", points, options, [&](const Point& p, PointOutcome& out) {
    const MetricJet jet = model.g.jet(p, 2);
    const PointTensor R = riemann_at(jet);
    const auto& G = jet.gamma;
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j)
        for (int k = j + 1; k < kDimension; ++k)
          if (G(i, j, k) != G(i, k, j)) out.fail("Gamma symmetry " + label(i, j, k), G(i, j, k) - G(i, k, j));
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j)
        for (int k = 0; k < kDimension; ++k)
          for (int l = 0; l < kDimension; ++l) {
            if (R(i, j, k, l) != -R(i, j, l, k)) out.fail("R antisymmetry " + label(i, j, k, l), R(i, j, k, l));
            const Rational bianchi = R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k);
            if (!bianchi.is_zero()) out.fail("first Bianchi " + label(i, j, k, l), bianchi);
            Rational lowered(0);
            for (int m = 0; m < kDimension; ++m)
              lowered += jet.g(i, m) * R(m, j, k, l) + jet.g(j, m) * R(m, i, k, l);
            if (!lowered.is_zero()) out.fail("lowered antisymmetry " + label(i, j, k, l), lowered);
          }
    ExactEvaluator eval(p);
    const PointTensor cov = covariant_derivative_at(model.g.tensor().evaluate(eval), dg.evaluate(eval), jet);
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j)
        for (int k = 0; k < kDimension; ++k)
          if (!cov(i, j, k).is_zero()) out.fail("metric compatibility " + label(i, j, k), cov(i, j, k));
    if (jet.inverse * jet.g != RationalMatrix::identity(kDimension)) out.fail("inverse", "g^-1 g != I");
    const auto poly = characteristic_polynomial(jet.inverse * jet.g);
    if (poly != polynomial_from_roots(std::vector<Rational>(kDimension, Rational(1))))
      out.fail("charpoly(g^-1 g)", "not (lambda-1)^6");
  });
}

CheckResult check_model_invariants(const HSpaceModel& model, std::span<const Point> points,
                                   const VerifyOptions& options) {
  std::vector<std::pair<std::string, std::string>> structural;
  for (const auto& [name, field] : {std::pair{"g", &model.g.tensor()}, std::pair{"a", &model.a_tensor},
                                    std::pair{"h", &model.h}})
    if (!field->is_structurally_symmetric()) structural.emplace_back(std::string(name) + " symmetry", "asymmetric");
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < kDimension; ++j)
      if (!simplify(model.g(i, j)).is_zero()) structural.emplace_back("g block " + label(i, j), "nonzero");
  const auto dphi = gradient(model.phi);
  for (int k : {0, 1, 3, 4})
    if (!simplify(dphi[k]).is_zero()) structural.emplace_back("phi_" + std::to_string(k + 1), "nonzero");

  const Expr shift = Expr(3) * (model.aux.f3 + model.aux.f6 + Expr(model.params.c));
  return run_pointwise("model_invariants", points, options, [&](const Point& p, PointOutcome& out) {
    for (const auto& [c, v] : structural) out.fail(c, v);
    ExactEvaluator eval(p);
    const PointMatrix g = model.g.tensor().evaluate(eval).as_matrix();
    const PointMatrix a = model.a_tensor.evaluate(eval).as_matrix();
    const PointMatrix h = model.h.evaluate(eval).as_matrix();
    const Rational s = eval(shift);
    for (int i = 0; i < kDimension; ++i)
      for (int j = 0; j < kDimension; ++j) {
        const Rational r = h(i, j) - a(i, j) - s * g(i, j);
        if (!r.is_zero()) out.fail("h - a - 3(f3+f6+c)g " + label(i, j), r);
      }
    PointMatrix b1(3, 3);
    PointMatrix b2(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        b1(i, j) = g(i, j);
        b2(i, j) = g(i + 3, j + 3);
      }
    const Rational det = determinant(g);
    if (det.is_zero()) out.fail("det g", det);
    if (det != determinant(b1) * determinant(b2)) out.fail("det g = det block1 * det block2", det);
    const auto [pos, neg] = signature_at(model.g, p);
    out.measure("signature", "+" + std::to_string(pos) + " -" + std::to_string(neg));
  });
}

std::set<CheckGroup> all_check_groups() {
  return {CheckGroup::eisenhart, CheckGroup::integrability, CheckGroup::curvature, CheckGroup::parallel,
          CheckGroup::defining,  CheckGroup::segre,         CheckGroup::invariants};
}

std::set<CheckGroup> parse_check_selection(const std::string& name) {
  if (name == "all") return all_check_groups();
  if (name == "eisenhart") return {CheckGroup::eisenhart};
  if (name == "integrability") return {CheckGroup::integrability};
  if (name == "curvature") return {CheckGroup::curvature};
  if (name == "parallel") return {CheckGroup::parallel};
  if (name == "defining") return {CheckGroup::defining};
  if (name == "segre") return {CheckGroup::segre};
  if (name == "invariants") return {CheckGroup::invariants};
  throw std::invalid_argument("unknown check '" + name + "'");
}

namespace {

std::vector<std::pair<std::string, std::string>> params_echo(const HSpaceParams& params) {
  return {{"e3", std::to_string(params.e3)}, {"e6", std::to_string(params.e6)},
          {"eps", std::to_string(params.eps)}, {"epst", std::to_string(params.epst)},
          {"a", params.a.to_string()},          {"c", params.c.to_string()},
          {"theta", params.theta.to_string()},  {"omega", params.omega.to_string()}};
}

// Five nonzero coefficient pairs drawn from the seed.
std::vector<std::pair<Rational, Rational>> linearity_coefficients(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eedc0ef1ULL);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  auto draw = [&] {
    long n = 0;
    while (n == 0) n = num(rng);
    return Rational(n, den(rng));
  };
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 0; i < 5; ++i) {
    Rational a1 = draw();
    out.emplace_back(a1, draw());
  }
  return out;
}

}  // namespace

VerificationReport run_full_suite(const HSpaceParams& params, const SampleStrategy& strategy,
                                  const std::set<CheckGroup>& selection, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.params = params_echo(params);
  report.seed = strategy.seed;
  auto finish = [&] {
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
  auto config_failure = [&](std::string name, std::string note) {
    CheckResult r;
    r.name = std::move(name);
    r.status = CheckStatus::fail;
    r.failure_count = 1;
    r.witnesses.push_back({0, "-", "-", note});
    r.notes.push_back(std::move(note));
    report.checks.push_back(std::move(r));
    return finish();
  };

  std::optional<HSpaceModel> model;
  try {
    model = build_model(params);
  } catch (const ParameterError& e) {
    return config_failure("parameters", e.what());
  }
  std::vector<Point> points;
  try {
    points = as_points(sample_regular_points(*model, strategy));
  } catch (const std::exception& e) {
    return config_failure("sampling", e.what());
  }
  report.point_count = points.size();
  for (const auto& p : points) report.points.push_back(p.to_string());

  const HSpaceModel& m = *model;
  const Expr constant(m.params.c);
  auto run = [&](CheckGroup group, auto&& fn) {
    if (!selection.contains(group)) return;
    try {
      report.checks.push_back(fn());
    } catch (const std::exception& e) {
      CheckResult r;
      r.status = CheckStatus::fail;
      r.failure_count = 1;
      r.name = "internal";
      r.notes.push_back(e.what());
      r.witnesses.push_back({0, "-", "-", e.what()});
      report.checks.push_back(std::move(r));
    }
  };
  run(CheckGroup::invariants, [&] { return check_model_invariants(m, points, options); });
  run(CheckGroup::invariants, [&] { return check_engine_invariants(m, points, options); });
  run(CheckGroup::eisenhart, [&] { return check_eisenhart(m, m.h, m.phi, points, options, "eisenhart"); });
  run(CheckGroup::eisenhart,
      [&] { return check_eisenhart(m, m.g.tensor(), Expr(), points, options, "eisenhart_metric"); });
  run(CheckGroup::eisenhart,
      [&] { return check_linearity(m, points, linearity_coefficients(strategy.seed), options); });
  run(CheckGroup::integrability, [&] { return check_integrability(m, m.h, m.phi, points, options); });
  run(CheckGroup::integrability, [&] {
    return check_integrability(m, m.g.tensor(), constant, points, options, "integrability_metric");
  });
  run(CheckGroup::curvature, [&] { return check_curvature(m, points, options); });
  run(CheckGroup::parallel, [&] { return solve_parallel_pointwise(m, points, options); });
  run(CheckGroup::defining, [&] { return check_defining_function(m, points, options); });
  run(CheckGroup::segre, [&] { return check_segre(m, points, options); });
  return finish();
}

}  // namespace h33
