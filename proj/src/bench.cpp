// SPDX-License-Identifier: Apache-2.0
#include "hardy/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <random>

#include "hardy/error.hpp"
#include "hardy/verify.hpp"

namespace hardy {

using nlohmann::json;

WeightProblem ProblemSpec::build() const {
  const GeometryContext g = GeometryContext::from_spec(ctx);
  WeightProblem w(g);
  w.V = g.parse(V);
  if (!f.empty()) {
    if (!F.empty()) throw ConfigError("give either f or F, not both");
    w.source = Potential{g.parse(f)};
  } else {
    if (F.size() != g.frame_size())
      throw ConfigError("field needs " + std::to_string(g.frame_size()) + " components for " + g.spec());
    VectorFieldExpr v;
    for (const auto& c : F) v.components.push_back(g.parse(c));
    w.source = Field{v};
  }
  w.p = p;
  for (const auto& [k, v] : params) w.params[k] = v;
  if (!closed_form.empty()) w.closed_form_W = g.parse(closed_form);
  if (!target.empty()) w.target_W = g.parse(target);
  w.claimed = claimed;
  return w;
}

json ProblemSpec::to_json() const {
  json j{{"ctx", ctx}, {"V", V}, {"p", p}};
  if (!f.empty()) j["f"] = f;
  if (!F.empty()) j["F"] = F;
  if (!params.empty()) j["params"] = params;
  if (!closed_form.empty()) j["closed_form"] = closed_form;
  if (!target.empty()) j["target"] = target;
  if (claimed) j["claimed"] = *claimed;
  return j;
}

json RunConfig::to_json() const {
  return {{"nodes", nodes}, {"nodes_4d", nodes_4d}, {"seeds", seeds}, {"tol", tol}, {"seed", seed}, {"schema_version", kSchemaVersion}};
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json values_json(const IdentityValues& v) {
  json j{{"nodes", v.nodes},           {"lhs", v.lhs},           {"weight_term", v.weight_term},
         {"remainder_term", v.remainder_term}, {"residual", v.residual}, {"relative_residual", v.relative_residual},
         {"margin", v.margin}};
  if (v.remainder_alt) j["remainder_alt"] = *v.remainder_alt;
  if (std::isfinite(v.min_pointwise)) j["min_pointwise"] = v.min_pointwise;
  return j;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

const char* boundary_name(Boundary b) { return b == Boundary::Dirichlet ? "d" : "n"; }

struct Runner {
  const RunConfig& config;

  std::vector<CheckRecord> operator()(const IdentityCheck& c) const {
    const WeightProblem prob = c.problem.build();
    const Box box = Box::parse(c.support);
    if (config.seeds < 1) throw ConfigError("seeds must be positive");
    std::vector<TestFunction> bumps;
    for (int k = 0; k < config.seeds; ++k) bumps.push_back(make_bump(prob.ctx, box, config.seed + k));
    const QuadratureGrid grid = build_grid(box, config.nodes_for(box.dim()));
    std::vector<IdentityReport> reports;
    if (prob.p == 2.0) {
      reports = check_identity_batch(prob, bumps, grid);
    } else {
      for (const auto& u : bumps) reports.push_back(check_identity_lp(prob, u, grid));
    }
    std::vector<CheckRecord> out;
    for (const auto& r : reports) {
      CheckRecord rec;
      rec.kind = prob.p == 2.0 ? "identity" : "identity_lp";
      rec.inputs = {{"problem", c.problem.to_json()}, {"support", c.support}, {"seed", r.seed}};
      for (const auto& v : r.resolutions) rec.resolutions.push_back(values_json(v));
      const auto& f = r.fine();
      rec.values.lhs = f.lhs;
      rec.values.weight_term = f.weight_term;
      rec.values.remainder_term = f.remainder_term;
      rec.values.residual = std::max(r.coarse().relative_residual, f.relative_residual);
      rec.values.margin = std::min(r.coarse().margin, f.margin);
      rec.pass = r.passes(config.tol);
      out.push_back(std::move(rec));
    }
    return out;
  }

  std::vector<CheckRecord> operator()(const ClosedFormCheck& c) const {
    const WeightProblem prob = c.problem.build();
    const GeometryContext& g = prob.ctx;
    const std::string expr = c.expression.empty() ? c.problem.closed_form : c.expression;
    if (expr.empty()) throw ConfigError("closed-form check without an expression");
    const CompiledField E = g.compile(g.parse(expr), prob.params);
    const WeightEvaluator eval(prob);
    const Box region = Box::parse(c.region);
    if (region.dim() != g.ambient_dim()) throw ConfigError("region dimension does not match the context");

    std::mt19937_64 rng(config.seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    for (const auto& [lo, hi] : region.axes) axes.emplace_back(lo, hi);
    std::vector<double> x(g.ambient_dim());
    double worst = 0.0, margin = std::numeric_limits<double>::infinity();
    std::size_t accepted = 0, attempts = 0;
    while (accepted < c.samples) {
      if (++attempts > 100 * c.samples) throw ConfigError("closed-form region misses the domain");
      for (std::size_t a = 0; a < x.size(); ++a) x[a] = axes[a](rng);
      if (!g.in_domain(x)) continue;
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      if (norm <= c.min_radius || norm >= c.max_radius) continue;
      ++accepted;
      const FramePoint pt = g.at(x);
      const double W = eval(pt).W;
      const double C = E.value(x);
      if (c.one_sided) {
        margin = std::min(margin, (W - C) / std::max(1.0, std::abs(C)));
      } else {
        const double scale = std::max(std::abs(C), std::abs(W));
        worst = std::max(worst, scale > 0.0 ? std::abs(W - C) / scale : 0.0);
      }
    }
    CheckRecord rec;
    rec.kind = c.one_sided ? "domination" : "closed_form";
    rec.inputs = {{"problem", c.problem.to_json()}, {"expression", expr}, {"region", c.region},
                  {"samples", c.samples},          {"tol", c.tol}};
    if (c.min_radius > 0.0) rec.inputs["min_radius"] = c.min_radius;
    if (std::isfinite(c.max_radius)) rec.inputs["max_radius"] = c.max_radius;
    if (c.one_sided) {
      rec.values.margin = margin;
      rec.pass = margin >= -c.tol;
    } else {
      rec.values.residual = worst;
      rec.pass = worst <= c.tol;
    }
    return {rec};
  }

  std::vector<CheckRecord> operator()(const PointCheck& c) const {
    const WeightProblem prob = c.problem.build();
    const WeightEvaluator eval(prob);
    const double W = eval(prob.ctx.at(c.at)).W;
    CheckRecord rec;
    rec.kind = "point_value";
    rec.inputs = {{"problem", c.problem.to_json()}, {"at", c.at}, {"expected", c.expected}, {"tol", c.tol}};
    rec.values.residual = std::abs(W - c.expected);
    rec.values.lower = W;
    rec.values.upper = W;
    rec.pass = *rec.values.residual <= c.tol * std::max(1.0, std::abs(c.expected));
    return {rec};
  }

  std::vector<CheckRecord> operator()(const InequalityCheck& c) const {
    const WeightProblem prob = c.problem.build();
    if (!prob.claimed || !prob.target_W) throw ConfigError("inequality check needs a target and a claimed constant");
    const Box box = Box::parse(c.support);
    const auto r = check_inequality(prob, make_bump(prob.ctx, box, config.seed), build_grid(box, config.nodes_for(box.dim())),
                                    *prob.claimed);
    CheckRecord rec;
    rec.kind = "inequality";
    rec.inputs = {{"problem", c.problem.to_json()}, {"support", c.support}, {"seed", config.seed}};
    for (const auto& v : r.resolutions)
      rec.resolutions.push_back({{"nodes", v.nodes}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"margin", v.margin}});
    rec.values.lhs = r.resolutions[1].lhs;
    rec.values.weight_term = r.resolutions[1].rhs;
    rec.values.margin = std::min(r.resolutions[0].margin, r.resolutions[1].margin);
    rec.pass = r.passes();
    return {rec};
  }

  std::vector<CheckRecord> operator()(const BracketCheck& c) const {
    const WeightProblem prob = c.problem.build();
    CertifyOptions opts;
    opts.box = Box::parse(c.region);
    opts.ladder = c.ladder;
    const CertifyResult cert = certify_lower_bound(prob, opts);
    CheckRecord rec;
    rec.kind = "bracket";
    rec.inputs = {{"problem", c.problem.to_json()}, {"region", c.region}, {"ladder", c.ladder},
                  {"expected_lower", c.expected_lower}, {"lower_tol", c.lower_tol}};
    rec.values.lower = cert.lower;
    const double gap = cert.lower - c.expected_lower;
    rec.values.residual = std::abs(gap);
    bool pass = c.lower_one_sided ? gap >= -c.lower_tol : std::abs(gap) <= c.lower_tol;
    json extra{{"samples", cert.samples}, {"upper_ratio", cert.upper_ratio}};
    if (c.ratio_tol) {
      const double spread = cert.upper_ratio - cert.lower;
      extra["ratio_spread"] = spread;
      rec.inputs["ratio_tol"] = *c.ratio_tol;
      pass = pass && spread <= *c.ratio_tol * std::max(1.0, std::abs(c.expected_lower));
    }
    // A one-sided claim is a valid constant, not a sharp one, so it may sit below the bracket.
    ConstantBracket bracket;
    bracket.lower = cert.lower;
    bracket.upper = std::numeric_limits<double>::infinity();
    if (!c.lower_one_sided) bracket.claimed = c.problem.claimed;
    if (c.trial) {
      const TrialResult t = trial_upper_bound(prob, *c.trial, c.free);
      bracket.upper = t.quotient;
      rec.values.upper = t.quotient;
      extra["trial"] = {{"a", t.best.a},           {"b", t.best.b},         {"log_r_in", t.best.log_r_in},
                        {"log_r_out", t.best.log_r_out}, {"width", t.best.width}, {"evaluations", t.evaluations}};
      if (c.max_upper) {
        rec.inputs["max_upper"] = *c.max_upper;
        pass = pass && t.quotient <= *c.max_upper;
      }
      if (c.expected_upper) {
        rec.inputs["expected_upper"] = *c.expected_upper;
        pass = pass && std::abs(t.quotient - *c.expected_upper) <= c.upper_tol;
      }
    }
    pass = pass && bracket.consistent();
    rec.resolutions.push_back(extra);
    if (rec.values.upper) rec.values.margin = *rec.values.upper - cert.lower;
    rec.pass = pass;
    return {rec};
  }

  std::vector<CheckRecord> operator()(const BesselCheck& c) const {
    BesselProblem p;
    p.n = c.n;
    p.V = parse_expression(c.V);
    p.W = parse_expression(c.W);
    const BesselThreshold t = bessel_threshold(p, c.lo, c.hi, c.tol / 4.0);
    CheckRecord rec;
    rec.kind = "bessel";
    rec.inputs = {{"n", c.n},   {"V", c.V}, {"W", c.W}, {"bracket", {c.lo, c.hi}}, {"expected", c.expected},
                  {"tol", c.tol}};
    rec.values.lower = t.lo;
    rec.values.upper = t.hi;
    rec.values.residual = std::abs(t.value - c.expected);
    rec.resolutions.push_back({{"threshold", t.value}, {"iterations", t.iterations}});
    bool pass = *rec.values.residual <= c.tol;
    if (c.eigen_oracle) {
      // -(r^{n-1} V y')' = lambda r^{n-1} W y, natural at 0, Dirichlet at 1.
      SturmLiouvilleProblem sl;
      const std::string w = "pow(r, " + std::to_string(c.n - 1) + ")";
      sl.P = parse_expression(w + "*(" + c.V + ")");
      sl.Q = ScalarField::constant(0.0);
      sl.R = parse_expression(w + "*(" + c.W + ")");
      sl.right = Boundary::Dirichlet;
      const SturmLiouvilleResult e = sl_min(sl);
      rec.resolutions.push_back({{"eigenvalue", e.lambda}, {"meshes", e.meshes}, {"ladder", e.ladder}});
      rec.values.margin = std::abs(e.lambda - t.value) / e.lambda;
      pass = pass && *rec.values.margin <= 0.01;
    }
    rec.pass = pass;
    return {rec};
  }

  std::vector<CheckRecord> operator()(const SturmCheck& c) const {
    SturmLiouvilleProblem p;
    p.a = c.a;
    p.b = c.b;
    p.P = parse_expression(c.P);
    p.Q = parse_expression(c.Q);
    p.R = parse_expression(c.R);
    p.left = c.left;
    p.right = c.right;
    p.mesh = c.mesh;
    const SturmLiouvilleResult r = sl_min(p);
    CheckRecord rec;
    rec.kind = "sturm_liouville";
    rec.inputs = {{"interval", {c.a, c.b}}, {"P", c.P}, {"Q", c.Q}, {"R", c.R},
                  {"bc", std::string(boundary_name(c.left)) + "," + boundary_name(c.right)},
                  {"expected", c.expected}, {"tol", c.tol}};
    for (std::size_t i = 0; i < r.meshes.size(); ++i)
      rec.resolutions.push_back({{"mesh", r.meshes[i]}, {"lambda", r.ladder[i]}});
    rec.values.lower = r.lambda;
    rec.values.upper = r.lambda;
    rec.values.residual = std::abs(r.lambda - c.expected);
    rec.pass = *rec.values.residual <= c.tol && r.monotone();
    return {rec};
  }
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ScenarioReport run_scenario(const std::string& id, const RunConfig& config) {
  return run_scenario(find_scenario(id), config);
}

ScenarioReport run_scenario(const Scenario& scenario, const RunConfig& config) {
  if (config.nodes < 2) throw ConfigError("nodes must be at least 2");
  if (!(config.tol > 0.0)) throw ConfigError("tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport rep;
  rep.scenario_id = scenario.id;
  rep.anchors = scenario.anchors;
  rep.seed = config.seed;
  rep.config = config.to_json();
  rep.config_hash = config.hash();
  rep.timestamp = utc_now();
  const Runner run{config};
  for (const auto& check : scenario.checks) {
    const std::string where = scenario.id + " / " + check.label + ": ";
    std::vector<CheckRecord> recs;
    try {
      recs = std::visit(run, check.plan);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const ParseError& e) {
      throw ConfigError(where + e.what());
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError(where + e.what());
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    for (auto& r : recs) {
      r.label = check.label;
      r.inputs["provenance"] = check.provenance;
      rep.checks.push_back(std::move(r));
    }
  }
  rep.pass = !rep.checks.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json to_json(const ScenarioReport& r) {
  json anchors = json::array();
  for (const auto& a : r.anchors) anchors.push_back({{"ref", a.ref}, {"quote", a.quote}});
  json checks = json::array();
  for (const auto& c : r.checks) {
    const auto& v = c.values;
    checks.push_back({{"kind", c.kind},
                      {"label", c.label},
                      {"inputs", c.inputs},
                      {"resolutions", c.resolutions},
                      {"values",
                       {{"lhs", opt(v.lhs)},
                        {"weight_term", opt(v.weight_term)},
                        {"remainder_term", opt(v.remainder_term)},
                        {"residual", opt(v.residual)},
                        {"margin", opt(v.margin)},
                        {"lower", opt(v.lower)},
                        {"upper", opt(v.upper)}}},
                      {"verdict", c.pass ? "PASS" : "FAIL"}});
  }
  return {{"schema_version", r.schema_version},
          {"scenario_id", r.scenario_id},
          {"anchors", anchors},
          {"checks", checks},
          {"verdict", r.pass ? "PASS" : "FAIL"},
          {"seed", r.seed},
          {"config_hash", r.config_hash},
          {"config", r.config},
          {"timestamp", r.timestamp},
          {"seconds", r.seconds}};
}

ScenarioReport report_from_json(const json& j) {
  try {
    ScenarioReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw ConfigError("unsupported report schema version " + std::to_string(r.schema_version));
    r.scenario_id = j.at("scenario_id").get<std::string>();
    for (const auto& a : j.at("anchors")) r.anchors.push_back({a.at("ref"), a.at("quote")});
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.kind = c.at("kind").get<std::string>();
      rec.label = c.value("label", "");
      rec.inputs = c.at("inputs");
      rec.resolutions = c.at("resolutions");
      const json& v = c.at("values");
      rec.values = {opt_from(v, "lhs"),    opt_from(v, "weight_term"), opt_from(v, "remainder_term"),
                    opt_from(v, "residual"), opt_from(v, "margin"),    opt_from(v, "lower"),
                    opt_from(v, "upper")};
      rec.pass = c.at("verdict").get<std::string>() == "PASS";
      r.checks.push_back(std::move(rec));
    }
    r.pass = j.at("verdict").get<std::string>() == "PASS";
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.config = j.value("config", json::object());
    r.timestamp = j.value("timestamp", "");
    r.seconds = j.value("seconds", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

namespace {

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw Error("failed to write '" + path.string() + "'");
}

}  // namespace

void emit_report(const ScenarioReport& report, const std::filesystem::path& path) {
  write_json(to_json(report), path);
}

void emit_reports(const std::vector<ScenarioReport>& reports, const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  write_json(arr, path);
}

ScenarioReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed report '" + path.string() + "': " + e.what());
  }
  return report_from_json(j);
}

}  // namespace hardy
