// SPDX-License-Identifier: Apache-2.0
// hardy: command-line front end of the scenario catalog and the solvers.
//
//   hardy list
//   hardy run <id|all> [--nodes N] [--nodes-4d N] [--seeds K] [--tol T] [--seed S] [--out report.json]
//   hardy derive --ctx SPEC --V EXPR (--f EXPR | --F EXPRS) [--p P] --at x1,x2,...
//   hardy identity --ctx SPEC --V EXPR (--f EXPR | --F EXPRS) --support BOX --seed S [--nodes N] [--p P]
//   hardy bessel --n N --V EXPR --W EXPR --bracket lo,hi [--tol T]
//   hardy sl --interval a,b --P EXPR --Q EXPR --R EXPR --bc d|n,d|n [--mesh N]
//
// Field components in --F are separated by ';'. Exit status: 0 when every
// check passes, 1 when one fails (or a solver fails), 2 on usage errors.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hardy/bench.hpp"
#include "hardy/error.hpp"
#include "hardy/verify.hpp"

using namespace hardy;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> numbers(const std::string& s, std::size_t expected = 0) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  if (expected && out.size() != expected)
    throw ConfigError("expected " + std::to_string(expected) + " comma-separated numbers in '" + s + "'");
  return out;
}

struct SourceArgs {
  std::string ctx, V = "1", f, F;
  double p = 2.0;

  ProblemSpec spec() const {
    if (f.empty() == F.empty()) throw ConfigError("give exactly one of --f and --F");
    ProblemSpec s;
    s.ctx = ctx;
    s.V = V;
    s.f = f;
    s.p = p;
    if (!F.empty()) s.F = split(F, ';');
    return s;
  }
};

void add_source(CLI::App* cmd, SourceArgs& a) {
  cmd->add_option("--ctx", a.ctx, "geometry, e.g. euclidean:n=3, heisenberg:n=1")->required();
  cmd->add_option("--V", a.V, "weight V");
  cmd->add_option("--f", a.f, "positive potential f");
  cmd->add_option("--F", a.F, "field components separated by ';'");
  cmd->add_option("--p", a.p, "exponent p > 1");
}

int list() {
  for (const auto& s : catalog()) {
    std::cout << s.id << "\n    " << s.description << "\n    anchors:";
    for (const auto& a : s.anchors) std::cout << ' ' << a.ref;
    std::cout << '\n';
  }
  return kPass;
}

int run(const std::string& which, const RunConfig& cfg, const std::string& out) {
  std::vector<ScenarioReport> reports;
  if (which == "all") {
    for (const auto& s : catalog()) {
      reports.push_back(run_scenario(s, cfg));
      const auto& r = reports.back();
      std::printf("%s  %-26s %3zu checks  %7.1f s\n", r.pass ? "PASS" : "FAIL", r.scenario_id.c_str(),
                  r.checks.size(), r.seconds);
      std::fflush(stdout);
    }
  } else {
    reports.push_back(run_scenario(which, cfg));
  }
  bool pass = true;
  for (const auto& r : reports) {
    if (which != "all")
      std::printf("%s  %s  %zu checks  %.1f s\n", r.pass ? "PASS" : "FAIL", r.scenario_id.c_str(), r.checks.size(),
                  r.seconds);
    for (const auto& c : r.checks)
      if (!c.pass) std::printf("  FAIL %s / %s (%s)\n", r.scenario_id.c_str(), c.label.c_str(), c.kind.c_str());
    pass = pass && r.pass;
  }
  if (!out.empty()) {
    if (reports.size() == 1)
      emit_report(reports[0], out);
    else
      emit_reports(reports, out);
  }
  return pass ? kPass : kFail;
}

int derive(const SourceArgs& a, const std::string& at) {
  const WeightProblem prob = a.spec().build();
  const WeightEvaluator eval(prob);
  const std::vector<double> x = numbers(at, prob.ctx.ambient_dim());
  const WeightSample s = eval(prob.ctx.at(x));
  nlohmann::json j{{"ctx", prob.ctx.spec()}, {"at", x}, {"V", s.V}, {"W", s.W}, {"p", prob.p}};
  j["F"] = std::vector<double>(s.F.begin(), s.F.begin() + static_cast<long>(prob.ctx.frame_size()));
  std::cout << j.dump(2) << '\n';
  return kPass;
}

int identity(const SourceArgs& a, const std::string& support, std::uint64_t seed, int nodes) {
  const WeightProblem prob = a.spec().build();
  const Box box = Box::parse(support);
  const TestFunction u = make_bump(prob.ctx, box, seed);
  const QuadratureGrid grid = build_grid(box, nodes);
  const IdentityReport r = prob.p == 2.0 ? check_identity(prob, u, grid) : check_identity_lp(prob, u, grid);
  for (const auto& v : r.resolutions)
    std::printf("N=%-4d lhs %.15e  weight %.15e  remainder %.15e  rel.residual %.3e\n", v.nodes, v.lhs,
                v.weight_term, v.remainder_term, v.relative_residual);
  const bool pass = r.passes(kDefaultTolerance);
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? kPass : kFail;
}

int bessel(int n, const std::string& V, const std::string& W, const std::string& bracket, double tol) {
  const auto b = numbers(bracket, 2);
  BesselProblem p;
  p.n = n;
  p.V = parse_expression(V);
  p.W = parse_expression(W);
  const BesselThreshold t = bessel_threshold(p, b[0], b[1], tol);
  std::printf("threshold %.10f  (positive at %.10f, vanishes at %.10f, %d steps)\n", t.value, t.lo, t.hi,
              t.iterations);
  return kPass;
}

int sl(const std::string& interval, const std::string& P, const std::string& Q, const std::string& R,
       const std::string& bc, int mesh) {
  const auto ab = numbers(interval, 2);
  const auto sides = split(bc, ',');
  if (sides.size() != 2) throw ConfigError("--bc takes two boundary conditions, e.g. d,n");
  SturmLiouvilleProblem p;
  p.a = ab[0];
  p.b = ab[1];
  p.P = parse_expression(P);
  p.Q = parse_expression(Q);
  p.R = parse_expression(R);
  p.left = parse_boundary(sides[0]);
  p.right = parse_boundary(sides[1]);
  p.mesh = mesh;
  const SturmLiouvilleResult r = sl_min(p);
  for (std::size_t i = 0; i < r.meshes.size(); ++i) std::printf("mesh %-6d lambda %.12f\n", r.meshes[i], r.ladder[i]);
  std::printf("lambda %.10f  %s\n", r.lambda, r.monotone() ? "monotone" : "NOT monotone");
  return r.monotone() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy weights, identity checks and best constants"};
  app.require_subcommand(1);

  app.add_subcommand("list", "list the scenario catalog");

  auto* run_cmd = app.add_subcommand("run", "run one scenario or all of them");
  std::string which, out;
  RunConfig cfg;
  run_cmd->add_option("id", which, "scenario id or 'all'")->required();
  run_cmd->add_option("--nodes", cfg.nodes, "Gauss nodes per axis (the fine pass uses twice as many)");
  run_cmd->add_option("--nodes-4d", cfg.nodes_4d, "node cap for 4-dimensional supports");
  run_cmd->add_option("--seeds", cfg.seeds, "bumps per identity check");
  run_cmd->add_option("--tol", cfg.tol, "relative identity tolerance");
  run_cmd->add_option("--seed", cfg.seed, "base seed");
  run_cmd->add_option("--out", out, "JSON report path");

  SourceArgs derive_args, identity_args;
  std::string at, support;
  std::uint64_t seed = 0;
  int nodes = 24;
  auto* derive_cmd = app.add_subcommand("derive", "derived weight at a point");
  add_source(derive_cmd, derive_args);
  derive_cmd->add_option("--at", at, "point x1,x2,...")->required();
  auto* identity_cmd = app.add_subcommand("identity", "identity check on one bump");
  add_source(identity_cmd, identity_args);
  identity_cmd->add_option("--support", support, "bump support lo,hi;lo,hi;...")->required();
  identity_cmd->add_option("--seed", seed, "bump seed")->required();
  identity_cmd->add_option("--nodes", nodes, "Gauss nodes per axis");

  auto* bessel_cmd = app.add_subcommand("bessel", "shooting threshold of a radial weight pair on (0, 1)");
  int bn = 3;
  std::string bV = "1", bW, bracket;
  double btol = 1e-4;
  bessel_cmd->add_option("--n", bn, "dimension")->required();
  bessel_cmd->add_option("--V", bV, "V(r)");
  bessel_cmd->add_option("--W", bW, "W(r)")->required();
  bessel_cmd->add_option("--bracket", bracket, "lo,hi")->required();
  bessel_cmd->add_option("--tol", btol, "bracket width at exit");

  auto* sl_cmd = app.add_subcommand("sl", "smallest Sturm-Liouville eigenvalue");
  std::string interval, P = "1", Q = "0", R = "1", bc = "n,n";
  int mesh = 1024;
  sl_cmd->add_option("--interval", interval, "a,b")->required();
  sl_cmd->add_option("--P", P, "P(t)");
  sl_cmd->add_option("--Q", Q, "Q(t)");
  sl_cmd->add_option("--R", R, "R(t)");
  sl_cmd->add_option("--bc", bc, "left,right boundary: d (Dirichlet) or n (natural)");
  sl_cmd->add_option("--mesh", mesh, "base mesh N (runs N, 2N, 4N)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (app.got_subcommand("list")) return list();
    if (run_cmd->parsed()) return run(which, cfg, out);
    if (derive_cmd->parsed()) return derive(derive_args, at);
    if (identity_cmd->parsed()) return identity(identity_args, support, seed, nodes);
    if (bessel_cmd->parsed()) return bessel(bn, bV, bW, bracket, btol);
    if (sl_cmd->parsed()) return sl(interval, P, Q, R, bc, mesh);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
