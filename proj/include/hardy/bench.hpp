// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scenario catalog, runner and JSON reports.
//
// A scenario is a list of checks on textual problem specs, so every report
// records the exact inputs that produced it. Reports are deterministic for a
// fixed RunConfig: bump seeds are config.seed + k and sampling uses
// std::mt19937_64 seeded from the same value.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hardy/constants.hpp"
#include "hardy/verify.hpp"
#include "hardy/weights.hpp"

namespace hardy {

inline constexpr int kSchemaVersion = 1;

/// (V, f or F, p) plus optional closed form, target and claimed constant.
struct ProblemSpec {
  std::string ctx;
  std::string V = "1";
  std::string f;               // potential source; empty selects F
  std::vector<std::string> F;  // field components in frame order
  double p = 2.0;
  std::map<std::string, double> params;
  std::string closed_form;
  std::string target;
  std::optional<double> claimed;

  WeightProblem build() const;
  nlohmann::json to_json() const;
};

/// Identity residuals on config.seeds bumps supported in `support`.
struct IdentityCheck {
  ProblemSpec problem;
  std::string support;
};

/// Derived W against an expression at random points of `region`:
/// relative equality, or W >= expression when one_sided.
struct ClosedFormCheck {
  ProblemSpec problem;
  std::string expression;  // empty: problem.closed_form
  std::string region;
  /// Samples are also kept to min_radius < |x| < max_radius (coordinate norm).
  double min_radius = 0.0;
  double max_radius = std::numeric_limits<double>::infinity();
  bool one_sided = false;
  std::size_t samples = 10'000;
  double tol = 1e-9;
};

/// Derived W at one point.
struct PointCheck {
  ProblemSpec problem;
  std::vector<double> at;
  double expected = 0.0;
  double tol = 1e-12;
};

/// int V |grad u|^p - claimed int target |u|^p >= 0 on the first bump.
struct InequalityCheck {
  ProblemSpec problem;
  std::string support;
};

/// [lower, upper] for the best constant of V |grad u|^2 >= C target u^2.
/// lower comes from certify_lower_bound on `region`, upper from an optional
/// radial trial family.
struct BracketCheck {
  ProblemSpec problem;
  std::string region;
  bool ladder = true;  // off for weights that overflow along rays
  double expected_lower = 0.0;
  double lower_tol = 1e-9;
  bool lower_one_sided = false;  // lower >= expected_lower - lower_tol only
  /// Require max W/target - min W/target <= ratio_tol * |expected_lower|.
  std::optional<double> ratio_tol;
  std::optional<RadialTrial> trial;
  std::vector<TrialParameter> free;
  std::optional<double> expected_upper;  // |upper - expected_upper| <= upper_tol
  double upper_tol = 1e-3;
  std::optional<double> max_upper;
};

/// bessel_threshold on [lo, hi]; optionally cross-checked against the
/// Dirichlet eigenvalue of -(r^{n-1} V y')' = lambda r^{n-1} W y on (0, 1).
struct BesselCheck {
  int n = 3;
  std::string V = "1";
  std::string W;
  double lo = 0.0;
  double hi = 1.0;
  double expected = 0.0;
  double tol = 1e-4;
  bool eigen_oracle = false;
};

struct SturmCheck {
  double a = 0.0;
  double b = 1.0;
  std::string P = "1";
  std::string Q = "0";
  std::string R = "1";
  Boundary left = Boundary::Natural;
  Boundary right = Boundary::Natural;
  int mesh = 1024;
  double expected = 0.0;
  double tol = 1e-3;
};

using CheckPlan =
    std::variant<IdentityCheck, ClosedFormCheck, PointCheck, InequalityCheck, BracketCheck, BesselCheck, SturmCheck>;

struct Check {
  std::string label;
  /// Where the expected value comes from: "exact" (stated closed form),
  /// "derived" (worked out by hand from the stated one) or "numerical".
  std::string provenance;
  CheckPlan plan;
};

struct Anchor {
  std::string ref;    // stable key, see anchor_refs()
  std::string quote;  // the anchored statement as a formula
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct Scenario {
  std::string id;
  std::string description;
  std::vector<Anchor> anchors;
  std::vector<Check> checks;
};

/// Every anchor key the catalog must cover.
const std::vector<std::string>& anchor_refs();

/// Stable order.
const std::vector<Scenario>& catalog();
const Scenario& find_scenario(const std::string& id);  // ConfigError if unknown

struct RunConfig {
  int nodes = 32;
  /// Node cap for supports of dimension 4 and up; (2N)^4 grows quickly.
  int nodes_4d = 24;
  int seeds = 20;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;

  int nodes_for(std::size_t dim) const { return dim >= 4 ? std::min(nodes, nodes_4d) : nodes; }

  nlohmann::json to_json() const;
  /// FNV-1a of the canonical JSON, 16 hex digits.
  std::string hash() const;
};

struct CheckValues {
  std::optional<double> lhs, weight_term, remainder_term, residual, margin, lower, upper;
  friend bool operator==(const CheckValues&, const CheckValues&) = default;
};

struct CheckRecord {
  std::string kind;
  std::string label;
  nlohmann::json inputs;
  nlohmann::json resolutions = nlohmann::json::array();
  CheckValues values;
  bool pass = false;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ScenarioReport {
  int schema_version = kSchemaVersion;
  std::string scenario_id;
  std::vector<Anchor> anchors;
  std::vector<CheckRecord> checks;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string config_hash;
  nlohmann::json config;
  std::string timestamp;  // excluded from determinism comparisons
  double seconds = 0.0;   // likewise

  friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

/// Runs every check of the scenario. Exceptions raised inside a check are
/// rethrown as the same error type with the scenario and check identified.
ScenarioReport run_scenario(const std::string& id, const RunConfig& config = {});
ScenarioReport run_scenario(const Scenario& scenario, const RunConfig& config = {});

nlohmann::json to_json(const ScenarioReport& report);
ScenarioReport report_from_json(const nlohmann::json& j);

/// Write one report (or an array of reports). Throws Error on I/O failure.
void emit_report(const ScenarioReport& report, const std::filesystem::path& path);
void emit_reports(const std::vector<ScenarioReport>& reports, const std::filesystem::path& path);
ScenarioReport read_report(const std::filesystem::path& path);

}  // namespace hardy
