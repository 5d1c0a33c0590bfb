// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hspace33/calculus.hpp"
#include "hspace33/cli.hpp"
#include "hspace33/parser.hpp"
#include "hspace33/verify.hpp"

using namespace h33;

namespace {

constexpr int kPoints = 20;
constexpr int kParallelPoints = 5;
constexpr int kSegrePoints = 10;
constexpr int kLinearityPairs = 5;
constexpr int kFiniteDifferencePoints = 100;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kFiniteDifferenceTolerance = 1e-6;
constexpr std::uint64_t kSeed = 42;

struct Config {
  std::string name;
  HSpaceParams params;
};

// 4 (eps, epst) x 4 (e3, e6) x 4 (theta, omega) = 64 configurations.
std::vector<Config> configurations() {
  std::vector<Config> out;
  for (int eps : {0, 1})
    for (int epst : {0, 1})
      for (int e3 : {1, -1})
        for (int e6 : {1, -1})
          for (const char* theta : {"1", "x3"})
            for (const char* omega : {"1", "x6^2 + 1"}) {
              HSpaceParams p;
              p.eps = eps, p.epst = epst, p.e3 = e3, p.e6 = e6;
              p.theta = parse(theta);
              p.omega = parse(omega);
              std::ostringstream name;
              name << "eps=" << eps << " epst=" << epst << " e3=" << e3 << " e6=" << e6 << " theta=" << theta
                   << " omega=" << omega;
              out.push_back({name.str(), p});
            }
  return out;
}

struct Prepared {
  const Config* config;
  HSpaceModel model;
  std::vector<Point> points;
};

std::vector<Prepared> prepare(const std::vector<Config>& configs) {
  std::vector<Prepared> out;
  for (const auto& c : configs) {
    HSpaceModel m = build_model(c.params);
    auto pts = as_points(sample_regular_points(m, SampleStrategy{.seed = kSeed, .count = kPoints}));
    out.push_back({&c, std::move(m), std::move(pts)});
  }
  return out;
}

std::span<const Point> first(const std::vector<Point>& pts, int n) { return {pts.data(), static_cast<std::size_t>(n)}; }

// Collects the outcome of one criterion.
class Criterion {
 public:
  void fail(const std::string& where, const std::string& what) {
    ++failures_;
    if (first_failure_.empty()) first_failure_ = where + ": " + what;
  }
  void expect(bool ok, const std::string& where, const std::string& what) {
    if (!ok) fail(where, what);
  }
  void expect_pass(const CheckResult& r, const std::string& where) {
    if (r.status != CheckStatus::pass) {
      std::string what = r.name + " " + to_string(r.status);
      if (!r.witnesses.empty()) what += " at " + r.witnesses[0].component + " = " + r.witnesses[0].value;
      if (!r.skip_reason.empty()) what += " (" + r.skip_reason + ")";
      fail(where, what);
    }
  }
  bool ok() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  std::size_t failures_ = 0;
  std::string first_failure_;
};

bool report_line(int number, const std::string& title, const Criterion& c, const std::string& detail, double seconds) {
  const std::string body =
      c.ok() ? detail : std::to_string(c.failures()) + " failures; first: " + c.first_failure();
  std::printf("[%s] criterion %d: %s: %s (%.2fs)\n", c.ok() ? "PASS" : "FAIL", number, title.c_str(), body.c_str(),
              seconds);
  std::fflush(stdout);
  return c.ok();
}

// Independent constant-curvature test: fix K from the first component with a
// nonzero coefficient in K (delta^i_k g_jl - delta^i_l g_jk), then look for a
// component that disagrees.
bool violates_constant_curvature(const PointTensor& R, const PointMatrix& g) {
  std::optional<Rational> K;
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      for (int k = 0; k < kDimension; ++k)
        for (int l = 0; l < kDimension; ++l) {
          Rational coeff(0);
          if (i == k) coeff += g(j, l);
          if (i == l) coeff -= g(j, k);
          if (coeff.is_zero()) {
            if (!R(i, j, k, l).is_zero()) return true;
            continue;
          }
          const Rational ratio = R(i, j, k, l) / coeff;
          if (!K) K = ratio;
          else if (*K != ratio) return true;
        }
  return false;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t) { return std::chrono::duration<double>(clock::now() - t).count(); };
  const auto configs = configurations();
  const auto prepared = prepare(configs);
  bool all = true;

  // 1. Eisenhart exactness.
  {
    const auto t = clock::now();
    Criterion c;
    for (const auto& p : prepared)
      c.expect_pass(check_eisenhart(p.model, p.model.h, p.model.phi, p.points), p.config->name);
    all &= report_line(1, "Eisenhart residual with (h, phi) is exactly 0", c,
                       std::to_string(prepared.size()) + " configurations x " + std::to_string(kPoints) + " points",
                       seconds_since(t));
  }

  // 2. Curvature anchors, against 3 eps^2/(8A) and 3 epst^2/(8 Atilde) computed here.
  {
    const auto t = clock::now();
    Criterion c;
    std::size_t compared = 0;
    for (const auto& p : prepared) {
      const auto R = riemann(p.model.g);
      for (const auto& x : p.points) {
        const PointTensor r = R.at(x);
        const Rational A = Rational(p.config->params.eps) * x.coordinate(2) + evaluate_exact(p.config->params.theta, x);
        const Rational At =
            Rational(p.config->params.epst) * x.coordinate(5) + evaluate_exact(p.config->params.omega, x);
        const Rational want1 = Rational(3 * p.config->params.eps * p.config->params.eps, 8) / A;
        const Rational want2 = Rational(3 * p.config->params.epst * p.config->params.epst, 8) / At;
        c.expect(r(1, 0, 1, 2) == want1, p.config->name + " " + x.to_string(),
                 "R^2_123 = " + r(1, 0, 1, 2).to_string() + ", expected " + want1.to_string());
        c.expect(r(4, 3, 4, 5) == want2, p.config->name + " " + x.to_string(),
                 "R^5_456 = " + r(4, 3, 4, 5).to_string() + ", expected " + want2.to_string());
        compared += 2;
      }
    }
    all &= report_line(2, "R^2_123 = 3eps^2/(8A) and R^5_456 = 3epst^2/(8Atilde)", c,
                       std::to_string(compared) + " exact comparisons, no sign flip", seconds_since(t));
  }

  // 3. Flatness versus non-constant curvature.
  {
    const auto t = clock::now();
    Criterion c;
    std::size_t flat = 0, curved = 0;
    for (const auto& p : prepared) {
      const bool is_flat = is_flat_configuration(p.config->params);
      const auto R = riemann(p.model.g);
      for (const auto& x : p.points) {
        const PointTensor r = R.at(x);
        if (is_flat) {
          c.expect(r.is_zero(), p.config->name + " " + x.to_string(), "nonzero curvature component");
        } else {
          c.expect(violates_constant_curvature(r, metric_at(p.model.g, x)), p.config->name + " " + x.to_string(),
                   "curvature has constant-curvature form");
        }
      }
      const CheckResult r = check_curvature(p.model, p.points);
      c.expect_pass(r, p.config->name);
      if (!is_flat)
        c.expect(r.measurements.contains("non_constant_curvature_witness") &&
                     r.measurements.at("non_constant_curvature_witness").size() == p.points.size(),
                 p.config->name, "no explicit violating component pair reported");
      (is_flat ? flat : curved) += 1;
    }
    all &= report_line(3, "flat iff eps = epst = 0, else non-constant curvature witness", c,
                       std::to_string(flat) + " flat configurations with all 1296 components 0, " +
                           std::to_string(curved) + " curved with a witness at every point",
                       seconds_since(t));
  }

  // 4. Integrability.
  {
    const auto t = clock::now();
    Criterion c;
    for (const auto& p : prepared) {
      c.expect_pass(check_integrability(p.model, p.model.h, p.model.phi, p.points), p.config->name + " (h, phi)");
      c.expect_pass(check_integrability(p.model, p.model.g.tensor(), Expr(p.model.params.c), p.points,
                                        VerifyOptions{}, "integrability_metric"),
                    p.config->name + " (g, c)");
    }
    all &= report_line(4, "integrability for (h, phi) and (g, constant), all 6^4 index instances", c,
                       std::to_string(prepared.size()) + " configurations x " + std::to_string(kPoints) + " points",
                       seconds_since(t));
  }

  // 5. Parallel-tensor rigidity, algebraic layer.
  {
    const auto t = clock::now();
    Criterion c;
    std::map<std::string, std::size_t> dimensions;
    for (const auto& p : prepared) {
      if (is_flat_configuration(p.config->params)) continue;
      const auto pts = first(p.points, kParallelPoints);
      const CheckResult r = solve_parallel_pointwise(p.model, pts);
      c.expect_pass(r, p.config->name);
      if (r.measurements.contains("nullspace_dimension"))
        for (const auto& d : r.measurements.at("nullspace_dimension")) ++dimensions[d];
      // Recheck g(p) directly: g_mi R^m_jkl + g_mj R^m_ikl = 0.
      for (const auto& x : pts) {
        const MetricJet jet = p.model.g.jet(x, 2);
        const PointTensor R = riemann_at(jet);
        bool zero = true;
        for (int i = 0; i < kDimension && zero; ++i)
          for (int j = 0; j < kDimension && zero; ++j)
            for (int k = 0; k < kDimension && zero; ++k)
              for (int l = 0; l < kDimension && zero; ++l) {
                Rational s(0);
                for (int m = 0; m < kDimension; ++m) s += jet.g(m, i) * R(m, j, k, l) + jet.g(m, j) * R(m, i, k, l);
                zero = s.is_zero();
              }
        c.expect(zero, p.config->name + " " + x.to_string(), "g(p) does not solve the curvature constraints");
      }
    }
    std::string dims;
    for (const auto& [d, n] : dimensions)
      dims += (dims.empty() ? "" : ", ") + std::string("dim ") + d + " at " + std::to_string(n) + " points";
    all &= report_line(5, "nullspace contains g(p) and respects the metric zero pattern", c,
                       "measured " + (dims.empty() ? std::string("nothing") : dims), seconds_since(t));
  }

  // 6. Segre structure.
  {
    const auto t = clock::now();
    Criterion c;
    for (const auto& p : prepared) c.expect_pass(check_segre(p.model, first(p.points, kSegrePoints)), p.config->name);
    all &= report_line(6, "char poly (l-f3)^3 (l-f6)^3 and rank profiles (5,4,3) for g^-1 a and g^-1 h", c,
                       std::to_string(prepared.size()) + " configurations x " + std::to_string(kSegrePoints) +
                           " points",
                       seconds_since(t));
  }

  // 7. Defining-function pattern.
  {
    const auto t = clock::now();
    Criterion c;
    for (const auto& p : prepared) {
      for (int k : {0, 1, 3, 4})
        c.expect(simplify(differentiate(p.model.phi, Symbol::coordinate(k + 1))).is_zero(), p.config->name,
                 "phi_" + std::to_string(k + 1) + " is not the zero expression");
      c.expect_pass(check_defining_function(p.model, p.points), p.config->name);
    }
    all &= report_line(7, "phi_1 = phi_2 = phi_4 = phi_5 = 0, epst phi_3 = eps phi_6, Hessian on zero pattern", c,
                       std::to_string(prepared.size()) + " configurations x " + std::to_string(kPoints) + " points",
                       seconds_since(t));
  }

  // 8. Linearity.
  {
    const auto t = clock::now();
    Criterion c;
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
    std::vector<std::pair<Rational, Rational>> pairs;
    while (static_cast<int>(pairs.size()) < kLinearityPairs) {
      const Rational a1(num(rng), den(rng));
      const Rational a2(num(rng), den(rng));
      if (!a1.is_zero()) pairs.emplace_back(a1, a2);
    }
    for (const auto& p : prepared)
      for (const auto& [a1, a2] : pairs) {
        const TensorField b = Expr(a1) * p.model.h + Expr(a2) * p.model.g.tensor();
        c.expect_pass(check_eisenhart(p.model, b, Expr(a1) * p.model.phi, p.points),
                      p.config->name + " a1=" + a1.to_string() + " a2=" + a2.to_string());
      }
    std::string listed;
    for (const auto& [a1, a2] : pairs) listed += " (" + a1.to_string() + ", " + a2.to_string() + ")";
    all &= report_line(8, "a1 h + a2 g with psi = a1 phi passes Eisenhart", c, "pairs" + listed, seconds_since(t));
  }

  // 9. Engine hygiene.
  {
    const auto t = clock::now();
    Criterion c;
    for (const auto& p : prepared) c.expect_pass(check_engine_invariants(p.model, p.points), p.config->name);

    // Symbolic derivatives of model components against central differences.
    std::mt19937_64 rng(kSeed);
    int compared = 0;
    double worst = 0.0;
    for (const auto& p : prepared) {
      if (compared >= kFiniteDifferencePoints) break;
      const HSpaceModel& m = p.model;
      for (const auto& x : first(p.points, 2)) {
        const int i = static_cast<int>(rng() % kDimension), j = static_cast<int>(rng() % kDimension);
        const int k = 1 + static_cast<int>(rng() % kDimension);
        const Expr& e = (rng() % 2) ? m.h(i, j) : m.g(i, j);
        const Rational xk = x.coordinate(k);
        auto at = [&](double shift) {
          return evaluate_float(e, x.with_coordinate(k, Rational(mpq_class(xk.to_double() + shift))));
        };
        const double fd = (at(kFiniteDifferenceStep) - at(-kFiniteDifferenceStep)) / (2 * kFiniteDifferenceStep);
        const double exact = evaluate_float(differentiate(e, Symbol::coordinate(k)), x);
        const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
        worst = std::max(worst, rel);
        c.expect(rel <= kFiniteDifferenceTolerance, p.config->name + " " + x.to_string(),
                 "d/dx" + std::to_string(k) + " of component (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + "): relative error " + std::to_string(rel));
        ++compared;
      }
    }
    c.expect(compared == kFiniteDifferencePoints, "finite differences", "compared " + std::to_string(compared));

    // parse(print(parse(s))) = parse(s) on every printed model component.
    std::size_t corpus = 0;
    for (const auto& p : prepared) {
      for (const TensorField* field : {&p.model.g.tensor(), &p.model.a_tensor, &p.model.h})
        for (const auto& e : field->components()) {
          const Expr once = parse(e.to_string());
          const Expr twice = parse(once.to_string());
          c.expect(simplify(twice).same_as(simplify(once)), p.config->name, "round trip of " + e.to_string());
          ++corpus;
        }
      const Expr phi_once = parse(p.model.phi.to_string());
      c.expect(simplify(parse(phi_once.to_string())).same_as(simplify(phi_once)), p.config->name,
               "round trip of phi");
      ++corpus;
    }
    char worst_text[32];
    std::snprintf(worst_text, sizeof worst_text, "%.2e", worst);
    all &= report_line(9, "Bianchi, antisymmetry, Christoffel symmetry, metric compatibility, derivatives, parser", c,
                       std::to_string(compared) + " finite-difference points (worst relative error " + worst_text +
                           "), " + std::to_string(corpus) + " round-tripped expressions",
                       seconds_since(t));
  }

  // 10. Reproducibility through the command line.
  {
    const auto t = clock::now();
    Criterion c;
    auto run = [](std::vector<std::string> args) {
      args.insert(args.begin(), "hspace33");
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
      return std::pair{code, out.str()};
    };
    for (const char* file : {"default.hspace", "mixed.hspace", "flat.hspace"}) {
      const std::string path = std::string(HSPACE33_DATA_DIR) + "/" + file;
      const std::vector<std::string> args{"check", "all", "--params", path, "--seed", "42", "--samples", "20",
                                          "--format", "json"};
      const auto a = run(args);
      const auto b = run(args);
      c.expect(a.first == 0 && b.first == 0, file,
               "exit codes " + std::to_string(a.first) + ", " + std::to_string(b.first));
      c.expect(!a.second.empty() && a.second == b.second, file, "json reports differ");
    }
    all &= report_line(10, "identical config gives byte-identical json", c, "3 parameter files, 2 runs each",
                       seconds_since(t));
  }

  std::printf("%s\n", all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all ? 0 : 1;
}
