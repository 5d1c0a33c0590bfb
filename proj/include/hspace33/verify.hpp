#pragma once

// Identity checks against a built model. Every check evaluates exactly
// at a list of sample points; a failure records up to `max_witnesses`
// (point, component, value) triples.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hspace33/model.hpp"

namespace h33 {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

struct Witness {
  std::size_t point_index = 0;
  std::string point;      // coordinates, "{x1=.., ..}"
  std::string component;  // 1-based index label, e.g. "(2,3,1)"
  std::string value;      // residual value, ranks, or an error message
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string skip_reason;
  std::size_t points_checked = 0;
  std::size_t failure_count = 0;  // failing (point, component) instances, uncapped
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  // Per-point measurements in point order, e.g. nullspace dimensions.
  std::map<std::string, std::vector<std::string>> measurements;
  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerificationReport {
  std::vector<std::pair<std::string, std::string>> params;  // echo, file order
  std::uint64_t seed = 0;
  std::size_t point_count = 0;
  std::vector<std::string> points;
  std::vector<CheckResult> checks;
  double runtime_seconds = 0.0;  // not part of the serialized content

  // True iff no check failed (skipped checks count as passing).
  bool passed() const;
};

struct VerifyOptions {
  std::size_t max_witnesses = 10;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Residual b_ij;k - 2 g_ij psi_k - g_ik psi_j - g_jk psi_i at every point.
CheckResult check_eisenhart(const HSpaceModel& model, const TensorField& b, const Expr& psi,
                            std::span<const Point> points, const VerifyOptions& options = {},
                            std::string name = "eisenhart");

// All 6^4 instances of
//   b_mi R^m_jkl + b_mj R^m_ikl = g_ik psi;jl + g_jk psi;il - g_li psi;jk - g_lj psi;ik
CheckResult check_integrability(const HSpaceModel& model, const TensorField& b, const Expr& psi,
                                std::span<const Point> points, const VerifyOptions& options = {},
                                std::string name = "integrability");

// Curvature anchors R^2_123 = 3 eps^2/(8A), R^5_456 = 3 epst^2/(8 Atilde);
// flatness when eps = epst = 0, otherwise a witness against constant curvature.
CheckResult check_curvature(const HSpaceModel& model, std::span<const Point> points,
                            const VerifyOptions& options = {});

// Exact nullspace of b_mi R^m_jkl + b_mj R^m_ikl = 0 over symmetric b.
CheckResult solve_parallel_pointwise(const HSpaceModel& model, std::span<const Point> points,
                                     const VerifyOptions& options = {});

CheckResult check_defining_function(const HSpaceModel& model, std::span<const Point> points,
                                    const VerifyOptions& options = {});

// Characteristic polynomial and Jordan rank profiles of g^-1 a and g^-1 h.
CheckResult check_segre(const HSpaceModel& model, std::span<const Point> points, const VerifyOptions& options = {});

// (a1 h + a2 g, a1 phi) through check_eisenhart for each coefficient pair.
CheckResult check_linearity(const HSpaceModel& model, std::span<const Point> points,
                            const std::vector<std::pair<Rational, Rational>>& coefficients,
                            const VerifyOptions& options = {});

// Calculus identities: Christoffel symmetry, Riemann antisymmetry, first
// Bianchi identity, lowered antisymmetry, metric compatibility, exact
// inverse, and char poly of g^-1 g.
CheckResult check_engine_invariants(const HSpaceModel& model, std::span<const Point> points,
                                    const VerifyOptions& options = {});

// Model structure: symmetry of g, a, h; block-diagonal g; h = a + 3(f3+f6+c) g;
// det g = product of block determinants; phi independent of x1, x2, x4, x5.
CheckResult check_model_invariants(const HSpaceModel& model, std::span<const Point> points,
                                   const VerifyOptions& options = {});

enum class CheckGroup { eisenhart, integrability, curvature, parallel, defining, segre, invariants };

std::set<CheckGroup> all_check_groups();
// "all" or one group name; throws std::invalid_argument otherwise.
std::set<CheckGroup> parse_check_selection(const std::string& name);

// Builds the model, samples points, runs the selected checks in a fixed
// order. Never throws for bad parameters: the report then holds a single
// failing "parameters" (or "sampling") entry.
VerificationReport run_full_suite(const HSpaceParams& params, const SampleStrategy& strategy,
                                  const std::set<CheckGroup>& selection = all_check_groups(),
                                  const VerifyOptions& options = {});

}  // namespace h33
