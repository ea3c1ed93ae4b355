// SPDX-License-Identifier: Apache-2.0
// The scenario catalog. Expected values are tagged "exact" when the closed
// form is the stated one, "derived" when it was worked out from a general
// formula for other parameters, "numerical" for approximate constants.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "hardy/bench.hpp"
#include "hardy/error.hpp"

namespace hardy {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// |x - a|^2 in x1..x3.
std::string dist2(const std::vector<double>& a) {
  std::string s = "(";
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::string x = "x" + std::to_string(j + 1);
    if (j) s += " + ";
    s += a[j] == 0.0 ? x + "*" + x : "pow(" + x + " - " + num(a[j]) + ", 2)";
  }
  return s + ")";
}

double sep2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

// sum_i alpha_i (x - a_i) / |x - a_i|^2
std::vector<std::string> multipolar(const std::vector<std::vector<double>>& poles, const std::vector<double>& alpha) {
  std::vector<std::string> F;
  for (std::size_t j = 0; j < poles[0].size(); ++j) {
    std::string c;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (i) c += " + ";
      c += num(alpha[i]) + "*(x" + std::to_string(j + 1) + " - " + num(poles[i][j]) + ")/" + dist2(poles[i]);
    }
    F.push_back(c);
  }
  return F;
}

// sum_{i<j} c_i c_j |a_i - a_j|^2 / (r_i^2 r_j^2), scaled by `scale`.
std::string interaction(const std::vector<std::vector<double>>& poles, const std::vector<double>& c, double scale) {
  std::string s;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (!s.empty()) s += " + ";
      s += num(scale * c[i] * c[j] * sep2(poles[i], poles[j])) + "/(" + dist2(poles[i]) + "*" + dist2(poles[j]) + ")";
    }
  return s;
}

Check identity(ProblemSpec p, std::string support) {
  return {"identity", "exact", IdentityCheck{std::move(p), std::move(support)}};
}

Check closed_form(std::string label, ProblemSpec p, std::string region, std::string provenance = "exact") {
  return {std::move(label), std::move(provenance), ClosedFormCheck{std::move(p), "", std::move(region)}};
}

Check dominates(std::string label, ProblemSpec p, std::string bound, std::string region) {
  ClosedFormCheck c{std::move(p), std::move(bound), std::move(region)};
  c.one_sided = true;
  c.tol = 1e-10;
  return {std::move(label), "exact", std::move(c)};
}

Check inequality(ProblemSpec p, std::string support) {
  return {"inequality at the claimed constant", "exact", InequalityCheck{std::move(p), std::move(support)}};
}

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> out;
  const std::string cube = "0.2,1;0.2,1;0.2,1";
  const std::string wide = "-3,3;-3,3;-3,3";

  // ---- Euclidean, one singular point ----
  {
    ProblemSpec p{.ctx = "euclidean:n=3", .f = "pow(r, -0.5)"};
    p.closed_form = "0.25/(r*r)";
    p.target = "1/(r*r)";
    p.claimed = 0.25;
    BracketCheck b{.problem = p, .region = wide, .expected_lower = 0.25, .ratio_tol = 1e-12};
    b.trial = RadialTrial{-0.4, 0.0, -20.0, 20.0, 2.0};
    b.free = {{TrialParameter::A, -0.6, -0.4}, {TrialParameter::Width, 0.5, 15.0}};
    b.max_upper = 0.275;
    out.push_back({"classical-hardy-n3",
                   "|grad u|^2 >= 1/4 u^2/|x|^2 in R^3 from f = |x|^{-1/2}",
                   {{"classical-weighted", "int |x|^{-a}|grad u|^2 >= (n-2-a)^2/4 int u^2/|x|^{a+2}"},
                    {"identity-unit-weight", "int |grad u|^2 = -int (Lap f/f) u^2 + int f^2 |grad(u/f)|^2"}},
                   {identity(p, cube), closed_form("weight", p, wide),
                    {"constant bracket", "exact", b}, inequality(p, cube)}});
  }
  {
    // a = -1: V = |x|, f = |x|^{(2-n+a)/2} = 1/|x|, W = (n-2-a)^2/4 |x|^{-a-2}.
    ProblemSpec p{.ctx = "euclidean:n=3", .V = "r", .f = "1/r"};
    p.closed_form = "1/r";
    p.target = "1/r";
    p.claimed = 1.0;
    BracketCheck b{.problem = p, .region = wide, .expected_lower = 1.0, .ratio_tol = 1e-12};
    b.trial = RadialTrial{-0.8, 0.0, -20.0, 20.0, 2.0};
    b.free = {{TrialParameter::A, -1.2, -0.8}, {TrialParameter::Width, 0.5, 15.0}};
    b.max_upper = 1.1;
    ProblemSpec gen{.ctx = "euclidean:n=3", .V = "pow(r, -a)", .f = "pow(r, (2 - 3 + a)/2)", .params = {{"a", 0.7}}};
    gen.closed_form = "pow(1 - a, 2)/4*pow(r, -a - 2)";
    out.push_back({"classical-weighted-n3",
                   "|x||grad u|^2 >= u^2/|x| in R^3, the weighted family at a = -1",
                   {{"classical-weighted", "int |x|^{-a}|grad u|^2 >= (n-2-a)^2/4 int u^2/|x|^{a+2}"},
                    {"identity-potential", "int V|grad u|^2 = -int div(V grad f)/f u^2 + int V|grad u - u grad f/f|^2"}},
                   {identity(p, cube), closed_form("weight", p, wide),
                    closed_form("weight, a = 0.7", gen, wide, "derived"), {"constant bracket", "exact", b},
                    inequality(p, cube)}});
  }
  {
    ProblemSpec p{.ctx = "euclidean-radial:n=3", .f = "pow(r, -0.5)"};
    p.closed_form = "0.25/(r*r)";
    p.target = "1/(r*r)";
    p.claimed = 0.25;
    BracketCheck b{.problem = p, .region = wide, .expected_lower = 0.25, .ratio_tol = 1e-12};
    b.trial = RadialTrial{-0.4, 0.0, -20.0, 20.0, 2.0};
    b.free = {{TrialParameter::A, -0.6, -0.4}, {TrialParameter::Width, 0.5, 15.0}};
    b.max_upper = 0.275;
    out.push_back({"classical-radial-n3",
                   "radial derivative only: |d_r u|^2 >= 1/4 u^2/|x|^2 in R^3",
                   {{"classical-radial", "int |d_r u|^2 |x|^{-a} = (n-2-a)^2/4 int u^2 |x|^{-a-2} + int |T_a u|^2 |x|^{-a}"}},
                   {identity(p, "0.3,1.1;-0.4,0.4;-0.4,0.4"), closed_form("weight", p, wide),
                    {"constant bracket", "exact", b}}});
  }
  {
    ProblemSpec p{.ctx = "euclidean:n=2", .f = "sqrt(-log(r))"};
    p.closed_form = "1/(4*r*r*pow(log(r), 2))";
    p.target = p.closed_form;
    p.claimed = 1.0;
    BesselCheck bes{.n = 2, .W = "1/(pow(r, 2)*pow(log(r), 2))", .lo = 0.0, .hi = 1.0, .expected = 0.25, .tol = 1e-3};
    Check inside_disc = closed_form("weight", p, "-0.99,0.99;-0.99,0.99");
    std::get<ClosedFormCheck>(inside_disc.plan).max_radius = 0.99;
    out.push_back({"leray-disc",
                   "|grad u|^2 >= 1/4 u^2/(|x|^2 ln^2|x|) in the unit disc",
                   {{"leray", "int_B2 |grad u|^2 >= 1/4 int_B2 u^2/(|x|^2 ln^2|x|)"},
                    {"bessel-inequality", "int V|grad u|^2 >= beta(V, W) int W u^2 on the unit ball"}},
                   {identity(p, "0.2,0.6;0.1,0.5"), inside_disc,
                    {"bessel threshold", "exact", bes}, inequality(p, "0.2,0.6;0.1,0.5")}});
  }
  {
    // a = -1 outside the unit ball: f = |x|^{-1} (ln|x|)^{1/2}, V = |x|.
    ProblemSpec p{.ctx = "euclidean:n=3", .V = "r", .f = "sqrt(log(r))/r"};
    p.closed_form = "1/r + 1/(4*r*pow(log(r), 2))";
    ProblemSpec gen{.ctx = "euclidean:n=3", .V = "r", .f = "pow(r, be)*pow(log(r), ga)",
                    .params = {{"be", -0.7}, {"ga", 0.3}}};
    // -be(n-2-a+be)/r^{2+a} - ga(n-2-a+2be)/(r^{2+a} ln r) + ga(1-ga)/(r^{2+a} ln^2 r), a = -1
    gen.closed_form = "-be*(2 + be)/r - ga*(2 + 2*be)/(r*log(r)) + ga*(1 - ga)/(r*pow(log(r), 2))";
    const std::string outside = "1.3,2.2;-0.5,0.5;-0.5,0.5";
    out.push_back({"wang-willem-n3",
                   "Leray-type remainder for |x||grad u|^2 outside the unit ball of R^3",
                   {{"wang-willem", "int |x|^{-a}|grad u|^2 >= (n-2-a)^2/4 int u^2|x|^{-a-2} + 1/4 int u^2 |x|^{-a-2} ln^{-2}|x|"}},
                   {identity(p, outside), closed_form("weight", p, "1.01,4;-4,4;-4,4"),
                    closed_form("weight, general exponents", gen, "1.01,4;-4,4;-4,4", "derived")}});
  }
  {
    // n = 3, k = 1, m = 1; the weight sits on the x3 face of the cone.
    ProblemSpec p{.ctx = "euclidean:n=3", .V = "x3*r", .f = "x1*pow(r, -2.5)"};
    p.closed_form = "5.25*x3/r";
    p.target = "x3/r";
    p.claimed = 5.25;
    BracketCheck b{.problem = p, .region = "0.01,3;-3,3;0.01,3", .ladder = false, .expected_lower = 5.25,
                   .ratio_tol = 1e-12};
    const std::string inside = "0.3,1.2;-0.5,0.5;0.3,1.2";
    out.push_back({"cone-weighted",
                   "cone {x1 > 0, x3 > 0} with measure x3 |x| dx: constant (n+m+k)^2/4 - m = 21/4",
                   {{"cone", "int |grad u|^2 dmu >= ((n+m+k)^2/4 - m) int u^2/|x|^2 dmu, f = x1 |x|^{-(n+m+k)/2}"}},
                   {identity(p, inside), closed_form("weight", p, "0.01,3;-3,3;0.01,3"),
                    {"constant bracket", "exact", b}, inequality(p, inside)}});
  }

  // ---- Multipolar ----
  const std::string poles_box = "-0.3,0.3;-0.4,0.3;0.2,0.7";
  {
    const std::vector<std::vector<double>> a{{-0.5, 0.0, 0.0}, {0.5, 0.0, 0.0}};
    const std::vector<double> lambda{0.1, 0.15};  // sums to (n-2)^2/4
    const std::vector<double> alpha{0.2, 0.3};    // 2 lambda_i / (n-2)
    ProblemSpec p{.ctx = "euclidean:n=3", .F = multipolar(a, alpha)};
    p.closed_form = num(lambda[0]) + "/" + dist2(a[0]) + " + " + num(lambda[1]) + "/" + dist2(a[1]) + " + " +
                    interaction(a, lambda, 4.0);
    out.push_back({"multipolar-lambda",
                   "two poles, lambda = (0.1, 0.15): inverse-square terms plus pole interaction",
                   {{"multipolar-lambda", "sum lambda_i = (n-2)^2/4: W = sum lambda_i/r_i^2 + 4/(n-2)^2 sum_{i<j} lambda_i lambda_j |a_i-a_j|^2/(r_i^2 r_j^2)"},
                    {"identity-field", "int V|grad u|^2 = int [div(VF) - V|F|^2] u^2 + int V|grad u + uF|^2"}},
                   {identity(p, poles_box), closed_form("weight", p, "-2,2;-2,2;-2,2")}});
  }
  {
    const std::vector<std::vector<double>> a{{-0.5, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.6, 0.0}};
    const std::vector<double> mu{0.2, 0.3, 0.5};  // sums to n-2
    ProblemSpec p{.ctx = "euclidean:n=3", .F = multipolar(a, mu)};
    p.closed_form = interaction(a, mu, 1.0);
    out.push_back({"multipolar-mu",
                   "three poles, mu = (0.2, 0.3, 0.5): interaction terms only",
                   {{"multipolar-mu", "sum mu_i = n-2: W = sum_{i<j} mu_i mu_j |a_i-a_j|^2/(r_i^2 r_j^2)"},
                    {"identity-field", "int V|grad u|^2 = int [div(VF) - V|F|^2] u^2 + int V|grad u + uF|^2"}},
                   {identity(p, poles_box), closed_form("weight", p, "-2,2;-2,2;-2,2")}});
  }

  // ---- Bessel pairs ----
  {
    ProblemSpec p{.ctx = "euclidean:n=3", .f = "pow(r, -0.5)"};
    p.closed_form = "0.25/(r*r)";
    BesselCheck classical{.n = 3, .W = "pow(r, -2)", .lo = 0.0, .hi = 1.0, .expected = 0.25, .tol = 1e-4};
    BesselCheck disc{.n = 2, .W = "1", .lo = 1.0, .hi = 10.0, .tol = 5e-3, .eigen_oracle = true};
    disc.expected = 5.783185962946784;  // j_{0,1}^2
    out.push_back({"bessel-classical",
                   "shooting threshold of (r^{n-1} y')' + c r^{n-1} W y = 0 for W = r^{-2} (n = 3) and W = 1 (n = 2)",
                   {{"bessel-ode", "y'' + ((n-1)/r + V'/V) y' + c W/V y = 0 has a positive solution on (0, 1)"},
                    {"bessel-inequality", "int V|grad u|^2 >= beta(V, W) int W u^2 on the unit ball"}},
                   {identity(p, "0.1,0.5;0.1,0.5;0.1,0.5"), {"threshold, W = r^-2", "exact", classical},
                    {"threshold, disc", "numerical", disc}}});
  }

  // ---- Weight (1 + |x|^2)^a ----
  {
    Scenario s{"best-constant-quadratic",
               "(1+|x|^2)^a weight, -(n-2)/2 <= a <= (n+2)/2: constant (n+2a-2)^2/4 at a = -0.5, 0, 1, 2.5",
               {{"best-constant-quadratic", "C(a, n) = (n+2a-2)^2/4 for (2-n)/2 <= a <= (n+2)/2, f = (1+r^2)^{-(n+2a-2)/4}"},
                {"identity-potential", "int V|grad u|^2 = -int div(V grad f)/f u^2 + int V|grad u - u grad f/f|^2"}},
               {}};
    for (double a : {-0.5, 0.0, 1.0, 2.5}) {
      ProblemSpec p{.ctx = "euclidean:n=3", .V = "pow(1 + r*r, a)", .f = "pow(1 + r*r, g)",
                    .params = {{"a", a}, {"g", -(3.0 + 2.0 * a - 2.0) / 4.0}}};
      const double C = (3.0 + 2.0 * a - 2.0) * (3.0 + 2.0 * a - 2.0) / 4.0;
      // W = [C + T/(1+r^2)] (1+r^2)^{a-1}, T = (n^2 - (2a-2)^2)/4
      p.closed_form = "(" + num(C) + " + " + num((9.0 - (2 * a - 2) * (2 * a - 2)) / 4.0) +
                      "/(1 + r*r))*pow(1 + r*r, a - 1)";
      p.target = "pow(1 + r*r, a - 1)";
      p.claimed = C;
      BracketCheck b{.problem = p, .region = wide, .expected_lower = C};
      if (a == -0.5 || a == 2.5) b.ratio_tol = 1e-10;  // T = 0
      const std::string tag = "a = " + num(a);
      if (a == 1.0) s.checks.push_back(identity(p, "0.1,0.9;-0.4,0.4;-0.4,0.4"));
      s.checks.push_back(closed_form("weight, " + tag, p, wide, "derived"));
      s.checks.push_back({"lower bound, " + tag, "exact", b});
    }
    out.push_back(std::move(s));
  }
  {
    Scenario s{"best-constant-linear",
               "(1+|x|^2)^a weight, a > (n+2)/2: constant 2(a-1)n at a = 3, 5",
               {{"best-constant-linear", "C(a, n) = 2(a-1)n for a > (n+2)/2, f = (1+r^2)^{1-a}, W/(1+r^2)^{a-1} constant"}},
               {}};
    for (double a : {3.0, 5.0}) {
      ProblemSpec p{.ctx = "euclidean:n=3", .V = "pow(1 + r*r, a)", .f = "pow(1 + r*r, 1 - a)", .params = {{"a", a}}};
      const double C = 2.0 * (a - 1.0) * 3.0;
      p.closed_form = num(C) + "*pow(1 + r*r, a - 1)";
      p.target = "pow(1 + r*r, a - 1)";
      p.claimed = C;
      BracketCheck b{.problem = p, .region = wide, .expected_lower = C, .lower_tol = 1e-10 * C, .ratio_tol = 1e-10};
      if (a == 3.0) {
        // u = (1+r^2)^{1-a} cut off far out; the cutoff radius is optimized.
        b.trial = RadialTrial{0.0, 1.0 - a, -30.0, std::log(20.0), 1.0};
        b.free = {{TrialParameter::LogROut, std::log(20.0), std::log(1e8)}, {TrialParameter::Width, 0.5, 10.0}};
        b.expected_upper = C;
        b.upper_tol = 1e-3;
        s.checks.push_back(identity(p, "0.1,0.9;-0.4,0.4;-0.4,0.4"));
      }
      const std::string tag = "a = " + num(a);
      s.checks.push_back(closed_form("weight, " + tag, p, wide));
      s.checks.push_back({"bracket, " + tag, "exact", b});
    }
    out.push_back(std::move(s));
  }

  // ---- Half space, non-gradient field ----
  const std::string mazya_field_anchor =
      "int x_n|grad u|^2 >= 1/8 int u^2/rho + 7/32 int [x_n/rho^2 - x_n^2/rho^3] u^2, rho = |(x_{n-1}, x_n)|";
  {
    ProblemSpec p{.ctx = "halfspace:n=3", .V = "x3",
                  .F = {"0", "b*x2/(rho*rho)", "a/rho + b*x3/(rho*rho)"}, .params = {{"a", 0.125}, {"b", 0.375}}};
    p.closed_form = "1/(8*rho) + 7/32*x3*(rho - x3)/pow(rho, 3)";
    p.target = "1/rho";
    p.claimed = 0.125;
    ProblemSpec gen = p;
    gen.params = {{"a", 0.2}, {"b", 0.1}};
    gen.closed_form = "a/rho - (a*a + b*b - b)*x3/(rho*rho) - a*(1 + 2*b)*x3*x3/pow(rho, 3)";
    BracketCheck b{.problem = p, .region = "-2,2;-2,2;0,2", .expected_lower = 0.125, .lower_one_sided = true};
    const std::string support = "-0.5,0.5;0.3,1;0.3,1";
    out.push_back({"mazya-identity",
                   "half space with V = x3 and a non-gradient field: constant 1/8 plus a remainder weight",
                   {{"mazya-field", mazya_field_anchor},
                    {"identity-field", "int V|grad u|^2 = int [div(VF) - V|F|^2] u^2 + int V|grad u + uF|^2"}},
                   {identity(p, support), closed_form("weight", p, "-2,2;-2,2;0,2"),
                    closed_form("weight, a = 0.2, b = 0.1", gen, "-2,2;-2,2;0,2", "derived"),
                    {"lower bound", "exact", b}, inequality(p, support)}});
  }
  {
    ProblemSpec p{.ctx = "halfspace:n=2", .V = "x2", .F = {"b*x1/(rho*rho)", "a/rho + b*x2/(rho*rho)"},
                  .params = {{"a", 0.125}, {"b", 0.375}}};
    p.closed_form = "1/(8*rho) + 7/32*x2*(rho - x2)/pow(rho, 3)";
    SturmCheck sl{.a = 0.0, .b = std::numbers::pi, .P = "sin(t)", .Q = "sin(t)/4", .R = "1", .expected = 0.1564,
                  .tol = 1e-3};
    out.push_back({"mazya-lambda",
                   "optimal half-space constant: min int (g'^2 + g^2/4) sin t over int g^2 = 1 on (0, pi)",
                   {{"mazya-lambda", "lambda = inf int_0^pi (g'^2 + g^2/4) sin t dt / int_0^pi g^2 dt ~ 0.1564"},
                    {"mazya-field", mazya_field_anchor}},
                   {identity(p, "-0.5,0.5;0.3,1"), closed_form("weight", p, "-2,2;0,2"),
                    {"eigenvalue", "numerical", sl}}});
  }

  // ---- Exponential weight K = exp(|x|^2/4), bounded boxes ----
  for (const double a : {-0.125, -0.25}) {
    ProblemSpec p{.ctx = "euclidean:n=3", .V = "exp(r*r/4)", .f = "pow(r, -0.5)*exp(a*r*r)", .params = {{"a", a}}};
    // K [(n-2)^2/(4r^2) + (n-2-16a)/4 - a(4a+1) r^2]
    p.closed_form = a == -0.125 ? "exp(r*r/4)*(r*r/16 + 3/4 + 1/(4*r*r))" : "exp(r*r/4)*(5/4 + 1/(4*r*r))";
    p.target = "exp(r*r/4)/(r*r)";
    p.claimed = 0.25;
    BracketCheck b{.problem = p, .region = "-2,2;-2,2;-2,2", .ladder = false, .expected_lower = 0.25,
                   .lower_one_sided = true};
    const bool eighth = a == -0.125;
    out.push_back({eighth ? "exp-weight-eighth" : "exp-weight-quarter",
                   eighth ? "K = exp(|x|^2/4), f = |x|^{-1/2} exp(-|x|^2/8): r^2/16 + n/4 + (n-2)^2/(4r^2)"
                          : "K = exp(|x|^2/4), f = |x|^{-1/2} exp(-|x|^2/4): (n+2)/4 + (n-2)^2/(4r^2)",
                   {{eighth ? "exp-weight-eighth" : "exp-weight-quarter",
                     eighth ? "int |grad u|^2 K >= 1/16 int u^2|x|^2 K + n/4 int u^2 K + (n-2)^2/4 int u^2/|x|^2 K"
                            : "int |grad u|^2 K >= (n-2)^2/4 int u^2/|x|^2 K + (n+2)/4 int u^2 K"}},
                   {identity(p, "0.3,1.1;-0.4,0.4;-0.4,0.4"), closed_form("weight", p, "-2,2;-2,2;-2,2"),
                    {"lower bound against K/r^2", "exact", b}}});
  }

  // ---- Hyperbolic ball, rho = hyperbolic distance ----
  const std::string hyp = "hyperbolic:n=3";
  const std::string hyp_support = "0.1,0.4;0.1,0.4;-0.2,0.2";
  const std::string hyp_region = "-0.95,0.95;-0.95,0.95;-0.95,0.95";
  {
    ProblemSpec p{.ctx = hyp, .f = "sqrt(-log(tanh(rho/2)))*pow(sinh(rho), -0.5)"};
    p.closed_form = "0.75 + 0.25/pow(sinh(rho), 2) + 0.25/(pow(sinh(rho), 2)*pow(log(tanh(rho/2)), 2))";
    out.push_back({"hyperbolic-log-tanh",
                   "n(n-2)/4 + (n-2)^2/(4 sinh^2) + 1/(4 sinh^2 ln^2 tanh(rho/2)) on H^3",
                   {{"hyperbolic-log-tanh", "f = (ln tanh(rho/2))^{1/2} sinh^{(2-n)/2} rho: W = n(n-2)/4 + (n-2)^2/(4 sinh^2 rho) + 1/(4 sinh^2 rho ln^2 tanh(rho/2))"}},
                   {identity(p, hyp_support), closed_form("weight", p, hyp_region)}});
  }
  {
    ProblemSpec p{.ctx = hyp, .f = "pow(rho, -0.5)"};
    p.closed_form = "0.25/(rho*rho) + (rho*coth(rho) - 1)/(rho*rho)";
    ProblemSpec gen{.ctx = hyp, .f = "pow(rho, a)*pow(sinh(rho), b)*pow(cosh(rho), c)",
                    .params = {{"a", 0.3}, {"b", -0.4}, {"c", -0.2}}};
    gen.closed_form =
        "-(a*(a - 1)/(rho*rho) + b*(1 + b)/pow(sinh(rho), 2) + a*(2 + 2*b)*coth(rho)/rho + c*(3 + 2*b) + b*(2 + b)"
        " + c*(c - 1)*pow(tanh(rho), 2) + 2*c*a*tanh(rho)/rho)";
    out.push_back({"hyperbolic-power",
                   "(n-2)^2/(4 rho^2) + (n-1)(n-2)/2 (rho coth rho - 1)/rho^2 on H^3",
                   {{"hyperbolic-power", "f = rho^a sinh^b rho cosh^c rho: Lap f/f = a(a-1)/rho^2 + b(n-2+b)/sinh^2 + a(n-1+2b) coth/rho + c(n+2b) + b(n-1+b) + c(c-1) tanh^2 + 2ca tanh/rho"}},
                   {identity(p, hyp_support), closed_form("weight", p, hyp_region),
                    closed_form("weight, general exponents", gen, hyp_region, "derived")}});
  }
  {
    ProblemSpec p{.ctx = hyp, .f = "sqrt(rho)/sinh(rho)"};
    p.closed_form = "0.25/(rho*rho) + 1";
    out.push_back({"hyperbolic-sinh",
                   "1/(4 rho^2) + (n-1)(n-3)/(4 sinh^2 rho) + (n-1)^2/4 on H^3",
                   {{"hyperbolic-sinh", "f = rho^{1/2} sinh^{(1-n)/2} rho: W = 1/(4 rho^2) + (n-1)(n-3)/(4 sinh^2 rho) + (n-1)^2/4"}},
                   {identity(p, hyp_support), closed_form("weight", p, hyp_region)}});
  }
  {
    const double G = 1.0 / std::tanh(1.0) + 1.0 / (std::sinh(1.0) * std::sinh(1.0));
    ProblemSpec p{.ctx = hyp, .f = "sqrt(rho)*pow(cosh(rho), a)/sinh(rho)", .params = {{"a", -G / 2.0}}};
    p.closed_form = "0.25/(rho*rho) + 1 - a*((a - 1)*pow(tanh(rho), 2) + tanh(rho)/rho + 1)";
    // Inside rho <= 1, i.e. |x| <= tanh(1/2).
    const std::string unit = "-0.26,0.26;-0.26,0.26;-0.26,0.26";
    out.push_back({"hyperbolic-improved",
                   "unit hyperbolic ball: extra (coth 1 + csch^2 1)^2/4 tanh^2 rho from cosh^a rho",
                   {{"hyperbolic-improved", "rho < 1: W >= 1/(4rho^2) + (n-1)(n-3)/(4 sinh^2) + (n-1)^2/4 + (coth 1 + csch^2 1)^2/4 tanh^2 rho"}},
                   {identity(p, "0.05,0.25;0.05,0.25;-0.2,0.2"), closed_form("weight", p, unit),
                    dominates("bound inside rho <= 1", p, "0.25/(rho*rho) + 1 + a*a*pow(tanh(rho), 2)", unit)}});
  }

  // ---- Edge Laplacian ----
  {
    // a = (2-n)/4, b = q/2.
    ProblemSpec p{.ctx = "edge:n=2,q=1", .f = "sqrt(t)*pow(psi, a)", .params = {{"a", 0.0}}};
    p.closed_form = "0.25";
    ProblemSpec gen{.ctx = "edge:n=2,q=1", .f = "pow(t, b)*pow(psi, a)", .params = {{"a", -0.3}, {"b", 0.7}}};
    gen.closed_form =
        "-(4*a*(a - 1)/(psi*psi)*(pow(t, -4)*exp(-2/(t*t)) + rx*rx + t*t*ry*ry) + (4 + 2*t*t)*a/psi"
        " + a*exp(-1/(t*t))/(t*t*psi)*(4/(t*t) + 4*b - 6) + b*(b - 1))";
    Scenario s{"edge-improved",
               "edge Laplacian on (0,1) x R^n x R^q: derived weight dominates (n-2)^2/(4 psi) + q^2/4 + (n-2)e^2/8 q W0",
               {{"edge-improved", "int |grad_E u|^2 dsigma >= int [(n-2)^2/(4psi) + q^2/4 + (n-2)e^2/8 q W0] u^2 dsigma"}},
               {identity(p, "0.3,0.8;-0.4,0.4;-0.4,0.4;-0.4,0.4"), closed_form("weight", p, "0.05,0.99;-1,1;-1,1;-1,1"),
                closed_form("weight, a = -0.3, b = 0.7", gen, "0.05,0.99;-1,1;-1,1;-1,1", "derived")}};
    for (int n : {2, 3, 4}) {
      const std::string ctx = "edge:n=" + std::to_string(n) + ",q=1";
      ProblemSpec d{.ctx = ctx, .f = "sqrt(t)*pow(psi, a)", .params = {{"a", (2.0 - n) / 4.0}}};
      const std::string bound = num((n - 2.0) * (n - 2.0) / 4.0) + "/psi + 0.25 + " +
                                num((n - 2.0) * std::exp(2.0) / 8.0) + "*W0";
      std::string region = "0.02,0.99";
      for (int i = 0; i < n + 1; ++i) region += ";-1,1";
      s.checks.push_back(dominates("bound, n = " + std::to_string(n), d, bound, region));
    }
    out.push_back(std::move(s));
  }
  {
    ProblemSpec p{.ctx = "edge:n=1,q=1", .f = "sqrt(t)"};
    p.closed_form = "0.25";
    p.target = "1";
    p.claimed = 0.25;
    const std::string support = "0.3,0.8;-0.4,0.4;-0.4,0.4";
    out.push_back({"edge-one-dimensional",
                   "edge Laplacian with n = 1: q^2/4 from f = t^{q/2}",
                   {{"edge-one-dimensional", "n = 1: int |grad_E u|^2 dsigma >= q^2/4 int u^2 dsigma"}},
                   {identity(p, support), closed_form("weight", p, "0.05,0.99;-1,1;-1,1"), inequality(p, support)}});
  }

  // ---- Heisenberg group, n = 1 ----
  const std::string heis_support = "0.2,0.8;-0.4,0.4;0.2,0.7";
  const std::string heis_region = "-2,2;-2,2;0.01,2";
  const std::string heis_triple =
      "f = rho^a r^b t^c: -Lap f/f = -b(Q-4+b)/r^2 - a(Q-2+2b+4c+a) r^2/rho^4 - 4c(c-1) r^2/t^2";
  {
    ProblemSpec p{.ctx = "heisenberg:n=1", .f = "pow(rho, -Q/2)*sqrt(t)"};
    p.closed_form = "Q*Q/4*r*r/pow(rho, 4) + r*r/(t*t)";
    p.target = p.closed_form;
    p.claimed = 1.0;
    ProblemSpec gen{.ctx = "heisenberg:n=1", .f = "pow(rho, a)*pow(r, b)*pow(t, c)",
                    .params = {{"a", -1.3}, {"b", 0.4}, {"c", 0.7}}};
    gen.closed_form = "-b*(Q - 4 + b)/(r*r) - a*(Q - 2 + 2*b + 4*c + a)*r*r/pow(rho, 4) - 4*c*(c - 1)*r*r/(t*t)";
    out.push_back({"heisenberg-t",
                   "Q^2/4 r^2/rho^4 + r^2/t^2 on the half space t > 0",
                   {{"heisenberg-t", "int |grad_H u|^2 >= Q^2/4 int r^2/rho^4 u^2 + int r^2/t^2 u^2"},
                    {"heisenberg-triple", heis_triple}},
                   {identity(p, heis_support), closed_form("weight", p, heis_region),
                    closed_form("weight, general triple", gen, heis_region, "derived"), inequality(p, heis_support)}});
  }
  {
    ProblemSpec p{.ctx = "heisenberg:n=1", .f = "pow(rho, -(Q + 2)/2)*t"};
    p.closed_form = "(Q + 2)*(Q + 2)/4*r*r/pow(rho, 4)";
    ProblemSpec h2 = p;
    h2.ctx = "heisenberg:n=2";
    out.push_back({"heisenberg-rho",
                   "(Q+2)^2/4 r^2/rho^4",
                   {{"heisenberg-rho", "int |grad_H u|^2 >= (Q+2)^2/4 int r^2/rho^4 u^2"},
                    {"heisenberg-triple", heis_triple}},
                   {identity(p, heis_support), closed_form("weight", p, heis_region),
                    closed_form("weight, n = 2", h2, "-2,2;-2,2;-2,2;-2,2;0.01,2")}});
  }
  {
    ProblemSpec p{.ctx = "heisenberg:n=1", .f = "pow(rho, -3)*pow(r, -(Q - 4)/2)*t"};
    p.closed_form = "(Q - 4)*(Q - 4)/(4*r*r) + 9*r*r/pow(rho, 4)";
    ProblemSpec h2 = p;
    h2.ctx = "heisenberg:n=2";
    out.push_back({"heisenberg-r",
                   "(Q-4)^2/(4 r^2) + 9 r^2/rho^4",
                   {{"heisenberg-r", "int |grad_H u|^2 >= (Q-4)^2/4 int u^2/r^2 + 9 int r^2/rho^4 u^2"},
                    {"heisenberg-triple", heis_triple}},
                   {identity(p, heis_support), closed_form("weight", p, heis_region),
                    closed_form("weight, n = 2", h2, "-2,2;-2,2;-2,2;-2,2;0.01,2")}});
  }

  // ---- Grushin, d = 3, k = 1, gamma = 1 ----
  const std::string gru = "grushin:d=3,k=1,gamma=1";
  const std::string gru_support = "0.3,0.9;-0.4,0.4;-0.4,0.4;0.2,0.7";
  const std::string gru_region = "-2,2;-2,2;-2,2;-2,2";
  const std::string gru_triple =
      "f = |x|^a |y|^b rho^c: Lap f/f = a(d-2+a)/|x|^2 + b(k-2+b)|x|^{2g}/|y|^2 + c[c-2+d+2a+(1+g)(k+2b)] |x|^{2g}/rho^{2+2g}";
  {
    ProblemSpec p{.ctx = gru, .f = "pow(rx, -0.5)*sqrt(ry)*pow(rho, -2)"};
    p.closed_form = "0.25/(rx*rx) + 0.25*rx*rx/(ry*ry) + 4*rx*rx/pow(rho, 4)";
    ProblemSpec gen{.ctx = "grushin:d=2,k=2,gamma=0.5", .f = "pow(rx, a)*pow(ry, b)*pow(rho, c)",
                    .params = {{"a", 0.3}, {"b", -0.2}, {"c", -0.7}}};
    gen.closed_form =
        "-(a*a/(rx*rx) + b*b*pow(rx, 2*gamma)/(ry*ry) + c*(c + 2*a + (1 + gamma)*(2 + 2*b))*pow(rx, 2*gamma)"
        "/pow(rho, 2 + 2*gamma))";
    out.push_back({"grushin-x-y",
                   "(d-2)^2/(4|x|^2) + (k-2)^2/4 |x|^{2g}/|y|^2 + (1+g)^2 |x|^{2g}/rho^{2+2g}",
                   {{"grushin-x-y", "int |grad_g u|^2 >= (d-2)^2/4 int u^2/|x|^2 + (k-2)^2/4 int |x|^{2g}/|y|^2 u^2 + (1+g)^2 int |x|^{2g}/rho^{2+2g} u^2"},
                    {"grushin-triple", gru_triple}},
                   {identity(p, gru_support), closed_form("weight", p, gru_region),
                    closed_form("weight, general triple", gen, gru_region, "derived")}});
  }
  {
    ProblemSpec p{.ctx = gru, .f = "pow(rx, -0.5)*pow(rho, -1)"};
    p.closed_form = "0.25/(rx*rx) + rx*rx/pow(rho, 4)";
    out.push_back({"grushin-x",
                   "(d-2)^2/(4|x|^2) + k^2(1+g)^2/4 |x|^{2g}/rho^{2+2g}",
                   {{"grushin-x", "int |grad_g u|^2 >= (d-2)^2/4 int u^2/|x|^2 + k^2(1+g)^2/4 int |x|^{2g}/rho^{2+2g} u^2"},
                    {"grushin-triple", gru_triple}},
                   {identity(p, "0.3,0.9;-0.4,0.4;-0.4,0.4;-0.3,0.3"), closed_form("weight", p, gru_region),
                    {"weight at x = (1,0,0), y = 0", "derived", PointCheck{p, {1.0, 0.0, 0.0, 0.0}, 1.25}}}});
  }
  {
    ProblemSpec p{.ctx = gru, .f = "sqrt(ry)*pow(rho, -2.5)"};
    p.closed_form = "0.25*rx*rx/(ry*ry) + 6.25*rx*rx/pow(rho, 4)";
    out.push_back({"grushin-y",
                   "(k-2)^2/4 |x|^{2g}/|y|^2 + (d+2g)^2/4 |x|^{2g}/rho^{2+2g}",
                   {{"grushin-y", "int |grad_g u|^2 >= (k-2)^2/4 int |x|^{2g}/|y|^2 u^2 + (d+2g)^2/4 int |x|^{2g}/rho^{2+2g} u^2"},
                    {"grushin-triple", gru_triple}},
                   {identity(p, gru_support), closed_form("weight", p, gru_region)}});
  }

  // ---- L^p ----
  {
    Scenario s{"lp-euclidean",
               "|grad u|^p >= |(n-p)/p|^p |u|^p/|x|^p in R^3, p = 1.5, 2, 3",
               {{"lp-identity", "int V|grad u|^p = int [div(V|F|^{p-2}F) - (p-1)V|F|^p] |u|^p + int V R(u, F), R >= 0"},
                {"lp-weight", "F = -grad f/f: W = -div(V|grad f|^{p-2} grad f)/f^{p-1}"},
                {"lp-euclidean", "f = |x|^{1-n/p}: W = |(n-p)/p|^p |x|^{-p}"}},
               {}};
    for (double p : {1.5, 2.0, 3.0}) {
      ProblemSpec q{.ctx = "euclidean:n=3", .f = "pow(r, 1 - 3/q)", .p = p, .params = {{"q", p}}};
      q.closed_form = num(std::pow(std::abs(3.0 - p) / p, p)) + "*pow(r, -q)";
      s.checks.push_back(identity(q, "0.3,1;0.3,1;0.3,1"));
      s.checks.push_back(closed_form("weight, p = " + num(p), q, wide));
    }
    ProblemSpec off{.ctx = "euclidean:n=3", .f = "pow(r, -0.5)", .p = 3.0};
    // f = r^s: W = -|s|^{p-2} s (n - p + s(p-1)) r^{-p}, here s = -1/2.
    off.closed_form = "-0.25*pow(r, -3)";
    s.checks.push_back(identity(off, "0.3,1;0.3,1;0.3,1"));
    s.checks.push_back(closed_form("weight, p = 3, f = r^-1/2", off, wide, "derived"));
    out.push_back(std::move(s));
  }
  {
    Scenario s{"lp-heisenberg",
               "r^{b-p} rho^{2p-a} |grad_H u|^p >= ((Q+b-a)/p)^p r^b/rho^a |u|^p",
               {{"lp-heisenberg", "V = r^{b-p} rho^{2p-a}, f = rho^{-(Q+b-a)/p}: W = ((Q+b-a)/p)^p r^b/rho^a"},
                {"lp-weight", "F = -grad f/f: W = -div(V|grad f|^{p-2} grad f)/f^{p-1}"}},
               {}};
    for (double p : {1.5, 3.0}) {
      ProblemSpec q{.ctx = "heisenberg:n=1", .V = "pow(r, be - q)*pow(rho, 2*q - al)", .f = "pow(rho, -(Q + be - al)/q)",
                    .p = p, .params = {{"q", p}, {"al", 2.0}, {"be", 1.0}}};
      q.closed_form = "pow((Q + be - al)/q, q)*pow(r, be)/pow(rho, al)";
      s.checks.push_back(identity(q, heis_support));
      s.checks.push_back(closed_form("weight, p = " + num(p), q, heis_region));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& anchor_refs() {
  static const std::vector<std::string> refs = {
      "identity-field",        "identity-potential",  "identity-unit-weight", "classical-weighted",
      "classical-radial",      "leray",               "wang-willem",          "cone",
      "bessel-ode",            "bessel-inequality",   "multipolar-lambda",    "multipolar-mu",
      "best-constant-quadratic", "best-constant-linear", "mazya-field",       "mazya-lambda",
      "exp-weight-eighth",     "exp-weight-quarter",  "hyperbolic-log-tanh",  "hyperbolic-power",
      "hyperbolic-sinh",       "hyperbolic-improved", "edge-improved",        "edge-one-dimensional",
      "heisenberg-t",          "heisenberg-rho",      "heisenberg-r",         "heisenberg-triple",
      "grushin-x-y",           "grushin-x",           "grushin-y",            "grushin-triple",
      "lp-identity",           "lp-weight",           "lp-euclidean",         "lp-heisenberg"};
  return refs;
}

const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> scenarios = build_catalog();
  return scenarios;
}

const Scenario& find_scenario(const std::string& id) {
  for (const auto& s : catalog())
    if (s.id == id) return s;
  throw ConfigError("unknown scenario '" + id + "'");
}

}  // namespace hardy
