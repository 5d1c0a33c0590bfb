#pragma once

// Report serialization. JSON schema (keys in this order):
//
//   { "params":  { "e3": "1", ..., "theta": "1", "omega": "1" },
//     "seed":    42,
//     "points":  20,
//     "sample_points": [ "{x1=.., ..}", ... ],
//     "passed":  true,
//     "checks": [ { "name": "eisenhart", "status": "pass|fail|skipped",
//                   "skip_reason": "", "points_checked": 20, "failure_count": 0,
//                   "witnesses": [ {"point": 0, "coordinates": "...",
//                                   "component": "(1,2,3)", "value": "..."} ],
//                   "notes": [ "..." ],
//                   "measurements": { "key": [ "per-point value", ... ] } } ] }
//
// Runtime is left out unless requested so identical runs serialize to
// identical bytes.

#include <string>

#include "hspace33/verify.hpp"

namespace h33 {

enum class ReportFormat { text, json };

std::string emit_report(const VerificationReport& report, ReportFormat format, bool include_runtime = false);

// Inverse of the JSON emitter; throws std::runtime_error on schema mismatch.
VerificationReport report_from_json(const std::string& json);

}  // namespace h33
