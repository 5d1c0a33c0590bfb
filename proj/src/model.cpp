#include "hspace33/model.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "hspace33/calculus.hpp"
#include "hspace33/parser.hpp"

namespace h33 {

namespace {

bool vanishes_identically(const Expr& e, int coordinate) {
  const Expr s = simplify(e);
  if (s.is_zero()) return true;
  // A nonzero univariate rational function has finitely many zeros; 64
  // distinct non-pole sample values that all vanish mean the zero function.
  int checked = 0;
  for (long v = -40; v <= 40 && checked < 64; ++v) {
    Point p;
    p.bind_coordinate(coordinate, Rational(v));
    try {
      if (!evaluate_exact(s, p).is_zero()) return false;
      ++checked;
    } catch (const EvaluationError&) {
    }
  }
  return true;
}

void require_only(const Expr& e, int coordinate, const char* clause) {
  const std::uint8_t allowed = static_cast<std::uint8_t>(1u << (coordinate - 1));
  if (e.has_parameters() || (e.coordinate_mask() & ~allowed) != 0) throw ParameterError(clause);
}

}  // namespace

void HSpaceParams::validate() const {
  if (e3 != 1 && e3 != -1) throw ParameterError("e3 = +1 or -1");
  if (e6 != 1 && e6 != -1) throw ParameterError("e6 = +1 or -1");
  if (eps != 0 && eps != 1) throw ParameterError("eps = 0 or 1");
  if (epst != 0 && epst != 1) throw ParameterError("epst = 0 or 1");
  require_only(theta, 3, "theta depends on x3 only");
  require_only(omega, 6, "omega depends on x6 only");
  if (epst == 0 && a.is_zero()) throw ParameterError("a != 0 when epst = 0");
  if (eps == 0 && vanishes_identically(theta, 3)) throw ParameterError("theta(x3) != 0 when eps = 0");
  if (epst == 0 && vanishes_identically(omega, 6)) throw ParameterError("omega(x6) != 0 when epst = 0");
}

std::string HSpaceParams::to_text() const {
  std::ostringstream os;
  os << "e3 = " << e3 << '\n'
     << "e6 = " << e6 << '\n'
     << "eps = " << eps << '\n'
     << "epst = " << epst << '\n'
     << "a = " << a << '\n'
     << "c = " << c << '\n'
     << "theta = " << theta << '\n'
     << "omega = " << omega << '\n';
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Rational constant_value(std::string_view text, std::size_t line, const std::string& key) {
  Expr e;
  try {
    e = simplify(parse(text, ParseOptions{std::set<std::string>{}}));
  } catch (const ParseError& err) {
    throw ParameterFileError(key + ": " + err.what(), line);
  }
  if (!e.is_constant()) throw ParameterFileError(key + ": expected a rational constant", line);
  return e.value();
}

int small_integer(std::string_view text, std::size_t line, const std::string& key) {
  const Rational v = constant_value(text, line, key);
  if (!v.is_integer() || v.numerator() > 1000 || v.numerator() < -1000)
    throw ParameterFileError(key + ": expected a small integer", line);
  return static_cast<int>(v.numerator().get_si());
}

Expr function_of(std::string_view text, std::size_t line, const std::string& key, const std::string& variable) {
  try {
    return parse(text, ParseOptions{std::set<std::string>{variable}});
  } catch (const ParseError& err) {
    throw ParameterFileError(key + ": " + err.what(), line);
  }
}

}  // namespace

HSpaceParams parse_params(std::string_view text) {
  HSpaceParams params;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParameterFileError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParameterFileError(key + ": missing value", line_no);
    if (!seen.insert(key).second) throw ParameterFileError("duplicate key '" + key + "'", line_no);
    if (key == "e3") {
      params.e3 = small_integer(value, line_no, key);
    } else if (key == "e6") {
      params.e6 = small_integer(value, line_no, key);
    } else if (key == "eps") {
      params.eps = small_integer(value, line_no, key);
    } else if (key == "epst") {
      params.epst = small_integer(value, line_no, key);
    } else if (key == "a") {
      params.a = constant_value(value, line_no, key);
    } else if (key == "c") {
      params.c = constant_value(value, line_no, key);
    } else if (key == "theta") {
      params.theta = function_of(value, line_no, key, "x3");
    } else if (key == "omega") {
      params.omega = function_of(value, line_no, key, "x6");
    } else {
      throw ParameterFileError("unknown key '" + key + "'", line_no);
    }
  }
  return params;
}

HSpaceParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params(buf.str());
}

HSpaceModel build_model(const HSpaceParams& params) {
  params.validate();

  auto x = [](int i) { return Expr(Symbol::coordinate(i)); };
  const Expr eps(static_cast<long>(params.eps));
  const Expr epst(static_cast<long>(params.epst));

  HSpaceAux aux;
  aux.f3 = eps * x(3);
  aux.f6 = epst * x(6) + Expr(params.a);
  aux.A = eps * x(2) + params.theta;
  aux.Atilde = epst * x(5) + params.omega;
  const Expr diff = aux.f6 - aux.f3;
  aux.sigma1 = Expr(3) * pow(diff, -1);
  aux.sigma2 = Expr(3) * pow(diff, -2);

  const Expr& A = aux.A;
  const Expr& At = aux.Atilde;
  const Expr& s1 = aux.sigma1;
  const Expr& s2 = aux.sigma2;
  const Expr k1 = Expr(static_cast<long>(params.e3)) * pow(diff, 3);
  const Expr k2 = Expr(static_cast<long>(params.e6)) * pow(aux.f3 - aux.f6, 3);
  const Expr ex1 = eps * x(1);
  const Expr ex4 = epst * x(4);

  // Upper triangle, 0-based. A cross term c dx^p dx^q contributes c/2 to g_pq.
  std::array<std::array<Expr, kDimension>, kDimension> g;
  g[1][1] = k1;
  g[0][2] = Expr(2) * A * k1;
  g[1][2] = (ex1 - Expr(2) * A * s1) * k1;
  g[2][2] = (ex1 * ex1 - Expr(4) * ex1 * A * s1 + Expr(4) * A * A * s2) * k1;
  g[4][4] = k2;
  g[3][5] = Expr(2) * At * k2;
  g[4][5] = (ex4 + Expr(2) * At * s1) * k2;
  g[5][5] = (ex4 * ex4 + Expr(4) * ex4 * At * s1 + Expr(4) * At * At * s2) * k2;

  std::array<std::array<Expr, kDimension>, kDimension> a;
  for (int i = 0; i < kDimension; ++i)
    for (int j = i; j < kDimension; ++j) {
      const bool block1 = j < 3;
      const bool block2 = i >= 3;
      if (block1) a[i][j] = aux.f3 * g[i][j];
      if (block2) a[i][j] = aux.f6 * g[i][j];
    }
  a[1][2] = a[1][2] + g[0][2];
  a[2][2] = a[2][2] + Expr(4) * A * g[1][1] * (ex1 - A * s1);
  a[4][5] = a[4][5] + g[3][5];
  a[5][5] = a[5][5] + Expr(4) * At * g[4][4] * (ex4 + At * s1);

  TensorField g_field = TensorField::symmetric([&](int i, int j) { return g[i][j]; });
  TensorField a_field = TensorField::symmetric([&](int i, int j) { return a[i][j]; });
  const Expr shift = Expr(3) * (aux.f3 + aux.f6 + Expr(params.c));
  TensorField h_field = TensorField::symmetric([&](int i, int j) { return a[i][j] + shift * g[i][j]; });

  return HSpaceModel{
      .params = params,
      .g = MetricField(std::move(g_field), "[++----]"),
      .a_tensor = std::move(a_field),
      .phi = Expr(Rational(3, 2)) * (aux.f3 + aux.f6) + Expr(params.c),
      .h = std::move(h_field),
      .aux = std::move(aux),
  };
}

bool is_flat_configuration(const HSpaceParams& params) { return params.eps == 0 && params.epst == 0; }

std::optional<RegularPoint> RegularPoint::certify(const HSpaceModel& model, const Point& p) {
  try {
    ExactEvaluator eval(p);
    if ((eval(model.aux.f6) - eval(model.aux.f3)).is_zero()) return std::nullopt;
    if (eval(model.aux.A).is_zero() || eval(model.aux.Atilde).is_zero()) return std::nullopt;
    const PointMatrix g = model.g.tensor().evaluate(eval).as_matrix();
    if (determinant(g).is_zero()) return std::nullopt;
    model.a_tensor.evaluate(eval);
    model.h.evaluate(eval);
    eval(model.phi);
    // Derivatives of theta/omega can have poles the values do not show.
    model.g.jet(p, 2);
  } catch (const EvaluationError&) {
    return std::nullopt;
  } catch (const SingularMatrixError&) {
    return std::nullopt;
  }
  return RegularPoint(p);
}

std::vector<RegularPoint> sample_regular_points(const HSpaceModel& model, const SampleStrategy& strategy) {
  if (strategy.count < 1) throw std::invalid_argument("sample count must be positive");
  if (strategy.magnitude < 1) throw std::invalid_argument("sample magnitude must be positive");
  std::mt19937_64 rng(strategy.seed);
  std::uniform_int_distribution<long> numerator(-strategy.magnitude, strategy.magnitude);
  std::uniform_int_distribution<long> denominator(1, strategy.magnitude);
  std::vector<RegularPoint> out;
  int rejections = 0;
  while (static_cast<int>(out.size()) < strategy.count) {
    std::array<Rational, kDimension> x;
    for (auto& xi : x) {
      const long num = numerator(rng);
      xi = Rational(num, denominator(rng));
    }
    if (auto rp = RegularPoint::certify(model, Point::coordinates(x))) {
      out.push_back(std::move(*rp));
    } else if (++rejections > strategy.max_rejections) {
      throw SamplingExhaustedError("no regular points found after " + std::to_string(strategy.max_rejections) +
                                   " rejections (degenerate parameters?)");
    }
  }
  return out;
}

std::vector<Point> as_points(const std::vector<RegularPoint>& points) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.point());
  return out;
}

std::set<std::pair<int, int>> zero_pattern(const TensorField& t, std::span<const Point> points) {
  if (t.valence().rank() != 2) throw std::invalid_argument("zero_pattern expects a rank-2 field");
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < kDimension; ++i)
    for (int j = 0; j < kDimension; ++j)
      if (simplify(t(i, j)).is_zero()) out.emplace(i, j);
  for (const auto& p : points)
    for (const auto& [i, j] : out)
      if (!evaluate_exact(t(i, j), p).is_zero()) throw std::logic_error("zero expression evaluated nonzero");
  return out;
}

std::pair<int, int> signature_at(const MetricField& g, const Point& p) {
  // Symmetric elimination by congruence; Sylvester's law keeps the inertia.
  PointMatrix m = metric_at(g, p);
  const std::size_t n = m.rows();
  int pos = 0;
  int neg = 0;
  std::size_t k = 0;
  while (k < n) {
    std::size_t piv = k;
    while (piv < n && m(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      // All remaining diagonal entries vanish: fold an off-diagonal entry in.
      std::size_t r = n;
      std::size_t s = n;
      for (std::size_t i = k; i < n && r == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!m(i, j).is_zero()) {
            r = i;
            s = j;
            break;
          }
      if (r == n) break;  // remaining block is zero
      for (std::size_t j = 0; j < n; ++j) m(r, j) += m(s, j);
      for (std::size_t i = 0; i < n; ++i) m(i, r) += m(i, s);
      piv = r;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(m(i, piv), m(i, k));
    }
    const Rational d = m(k, k);
    (d.sign() > 0 ? pos : neg)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      const Rational f = m(i, k) / d;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      for (std::size_t j = k; j < n; ++j) m(j, i) = m(i, j);
    }
    ++k;
  }
  return {pos, neg};
}

}  // namespace h33
