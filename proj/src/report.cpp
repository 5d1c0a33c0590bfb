#include "hspace33/report.hpp"

#include <sstream>

#include "json.hpp"

namespace h33 {

namespace {

using json = nlohmann::ordered_json;

json to_json(const CheckResult& c) {
  json witnesses = json::array();
  for (const auto& w : c.witnesses)
    witnesses.push_back(
        {{"point", w.point_index}, {"coordinates", w.point}, {"component", w.component}, {"value", w.value}});
  json measurements = json::object();
  for (const auto& [k, v] : c.measurements) measurements[k] = v;
  return {{"name", c.name},
          {"status", to_string(c.status)},
          {"skip_reason", c.skip_reason},
          {"points_checked", c.points_checked},
          {"failure_count", c.failure_count},
          {"witnesses", witnesses},
          {"notes", c.notes},
          {"measurements", measurements}};
}

std::string emit_json(const VerificationReport& r, bool include_runtime) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json doc = {{"params", params},      {"seed", r.seed},     {"points", r.point_count},
              {"sample_points", r.points}, {"passed", r.passed()}, {"checks", checks}};
  if (include_runtime) doc["runtime_seconds"] = r.runtime_seconds;
  return doc.dump(2) + "\n";
}

std::string emit_text(const VerificationReport& r, bool include_runtime) {
  std::ostringstream os;
  os << "h-space [33] verification report\n";
  os << "params:";
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
  os << '\n';
  os << "seed: " << r.seed << '\n';
  os << "points: " << r.point_count << '\n';
  for (const auto& c : r.checks) {
    os << "check " << c.name << ": " << to_string(c.status);
    if (c.status == CheckStatus::skipped)
      os << " (" << c.skip_reason << ")";
    else
      os << " (" << c.points_checked << " points, " << c.failure_count << " failures)";
    os << '\n';
    for (const auto& w : c.witnesses)
      os << "  witness point " << w.point_index << ' ' << w.point << ' ' << w.component << " = " << w.value << '\n';
    for (const auto& [k, values] : c.measurements) {
      os << "  " << k << ':';
      for (const auto& v : values) os << ' ' << v;
      os << '\n';
    }
    for (const auto& n : c.notes) os << "  note: " << n << '\n';
  }
  os << "overall: " << (r.passed() ? "pass" : "fail") << '\n';
  if (include_runtime) os << "runtime: " << r.runtime_seconds << " s\n";
  return os.str();
}

}  // namespace

std::string emit_report(const VerificationReport& report, ReportFormat format, bool include_runtime) {
  return format == ReportFormat::json ? emit_json(report, include_runtime) : emit_text(report, include_runtime);
}

VerificationReport report_from_json(const std::string& text) {
  VerificationReport r;
  try {
    const json doc = json::parse(text);
    for (const auto& [k, v] : doc.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.point_count = doc.at("points").get<std::size_t>();
    r.points = doc.at("sample_points").get<std::vector<std::string>>();
    if (doc.contains("runtime_seconds")) r.runtime_seconds = doc["runtime_seconds"].get<double>();
    for (const auto& c : doc.at("checks")) {
      CheckResult cr;
      cr.name = c.at("name").get<std::string>();
      cr.status = check_status_from_string(c.at("status").get<std::string>());
      cr.skip_reason = c.at("skip_reason").get<std::string>();
      cr.points_checked = c.at("points_checked").get<std::size_t>();
      cr.failure_count = c.at("failure_count").get<std::size_t>();
      for (const auto& w : c.at("witnesses"))
        cr.witnesses.push_back({w.at("point").get<std::size_t>(), w.at("coordinates").get<std::string>(),
                                w.at("component").get<std::string>(), w.at("value").get<std::string>()});
      cr.notes = c.at("notes").get<std::vector<std::string>>();
      for (const auto& [k, v] : c.at("measurements").items())
        cr.measurements[k] = v.get<std::vector<std::string>>();
      r.checks.push_back(std::move(cr));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace h33
