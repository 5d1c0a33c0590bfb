#include "hspace33/cli.hpp"

#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hspace33/model.hpp"
#include "hspace33/parser.hpp"
#include "hspace33/report.hpp"
#include "hspace33/verify.hpp"

namespace h33 {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void print_field(std::ostream& os, const char* name, const TensorField& t) {
  for (int i = 0; i < kDimension; ++i)
    for (int j = i; j < kDimension; ++j) {
      const Expr e = simplify(t(i, j));
      if (!e.is_zero()) os << name << '(' << i + 1 << ',' << j + 1 << ") = " << e << '\n';
    }
}

void print_model(std::ostream& os, const HSpaceModel& m) {
  os << "# parameters\n" << m.params.to_text();
  os << "# auxiliary functions\n";
  os << "f3 = " << m.aux.f3 << '\n' << "f6 = " << m.aux.f6 << '\n';
  os << "A = " << m.aux.A << '\n' << "Atilde = " << m.aux.Atilde << '\n';
  os << "sigma1 = " << m.aux.sigma1 << '\n' << "sigma2 = " << m.aux.sigma2 << '\n';
  os << "# defining function\nphi = " << m.phi << '\n';
  os << "# metric (upper triangle, nonzero components; signature " << m.g.signature() << ")\n";
  print_field(os, "g", m.g.tensor());
  os << "# tensor a\n";
  print_field(os, "a", m.a_tensor);
  os << "# deformation h = a + 3(f3 + f6 + c) g\n";
  print_field(os, "h", m.h);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the six-dimensional type [33] h-space", "hspace33"};
  app.require_subcommand(1);

  std::string params_path;
  std::string which = "all";
  std::uint64_t seed = 42;
  int samples = 20;
  std::string format = "text";
  std::string out_path;
  unsigned threads = 0;
  std::size_t max_witnesses = 10;
  bool timing = false;

  auto* check = app.add_subcommand("check", "run verification checks and emit a report");
  check->add_option("which", which, "all|eisenhart|integrability|curvature|parallel|defining|segre|invariants")
      ->check(CLI::IsMember(
          {"all", "eisenhart", "integrability", "curvature", "parallel", "defining", "segre", "invariants"}));
  check->add_option("--params", params_path, "parameter file (defaults are used when omitted)");
  check->add_option("--seed", seed, "sampling seed");
  check->add_option("--samples", samples, "number of regular sample points")->check(CLI::PositiveNumber);
  check->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  check->add_option("--out", out_path, "write the report here instead of standard output");
  check->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  check->add_option("--max-witnesses", max_witnesses, "witness cap per check")->check(CLI::PositiveNumber);
  check->add_flag("--timing", timing, "include runtime in the report");

  auto* print = app.add_subcommand("print-model", "dump g, a, h and phi as expression text");
  print->add_option("--params", params_path, "parameter file (defaults are used when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitConfig;
  }

  HSpaceParams params;
  try {
    if (!params_path.empty()) params = load_params(params_path);
    params.validate();
  } catch (const ParameterError& e) {
    err << "hspace33: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "hspace33: " << (params_path.empty() ? "" : params_path + ": ") << e.what() << '\n';
    return kExitConfig;
  }

  if (print->parsed()) {
    print_model(out, build_model(params));
    return 0;
  }

  const SampleStrategy strategy{.seed = seed, .count = samples};
  const VerifyOptions options{.max_witnesses = max_witnesses, .threads = threads};
  const VerificationReport report = run_full_suite(params, strategy, parse_check_selection(which), options);
  const std::string doc =
      emit_report(report, format == "json" ? ReportFormat::json : ReportFormat::text, timing);

  if (out_path.empty()) {
    out << doc;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    file << doc;
    if (!file) {
      err << "hspace33: cannot write '" << out_path << "'\n";
      return kExitConfig;
    }
  }
  // No regular points means a degenerate configuration, not a failed check.
  if (report.checks.size() == 1 && report.checks[0].name == "sampling") {
    err << "hspace33: " << report.checks[0].notes.front() << '\n';
    return kExitConfig;
  }
  for (const auto& c : report.checks)
    if (c.status == CheckStatus::fail) err << "hspace33: check " << c.name << " failed\n";
  return report.passed() ? 0 : kExitFail;
}

}  // namespace h33
