// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/weights.hpp"

using namespace hardy;

namespace {

WeightProblem potential(const GeometryContext& g, const char* V, const char* f, ParamMap params = {}) {
  WeightProblem w{g};
  w.V = g.parse(V);
  w.source = Potential{g.parse(f)};
  w.params = std::move(params);
  return w;
}

WeightProblem field(const GeometryContext& g, const char* V, std::vector<const char*> F) {
  WeightProblem w{g};
  w.V = g.parse(V);
  VectorFieldExpr fe;
  for (const char* c : F) fe.components.push_back(g.parse(c));
  w.source = Field{fe};
  return w;
}

FramePoint at(const GeometryContext& g, std::vector<double> x) { return g.at(x); }

}  // namespace

TEST(WeightField, ClassicalFieldFromPotential) {
  const auto g = GeometryContext::euclidean(3);
  // F = -grad f / f for f = r^{-1/2} is x / (2 r^2).
  const auto w = field(g, "1", {"x1/(2*r*r)", "x2/(2*r*r)", "x3/(2*r*r)"});
  EXPECT_NEAR(derive_weight_field(w, at(g, {2, 0, 0})), 1.0 / 16.0, 1e-15);
}

TEST(WeightField, ZeroField) {
  const auto g = GeometryContext::heisenberg(1);
  const auto w = field(g, "1 + x1*x1", {"0", "0"});
  EXPECT_EQ(derive_weight_field(w, at(g, {0.3, 0.2, 0.1})), 0.0);
}

TEST(WeightField, HalfSpaceImprovedField) {
  const auto g = GeometryContext::half_space(2);
  const auto w = field(g, "x2", {"(3/8)*x1/(rho*rho)", "(1/8)/rho + (3/8)*x2/(rho*rho)"});
  EXPECT_NEAR(derive_weight_field(w, at(g, {0, 1})), 1.0 / 8.0, 1e-15);
  // Closed form 1/(8 rho) + (7/32) x2 (rho - x2) / rho^3 away from the axis.
  const std::vector<double> x = {0.7, 0.4};
  const double rho = std::hypot(x[0], x[1]);
  EXPECT_NEAR(derive_weight_field(w, g.at(x)), 1 / (8 * rho) + 7.0 / 32 * x[1] * (rho - x[1]) / std::pow(rho, 3), 1e-14);
}

TEST(WeightPotential, LogarithmicInTwoDimensions) {
  const auto g = GeometryContext::euclidean(2);
  const auto w = potential(g, "1", "pow(abs(log(r)), 0.5)");
  const double r = std::exp(-1.0);
  EXPECT_NEAR(derive_weight_potential(w, at(g, {r, 0})), std::exp(2.0) / 4, 1e-13);
}

TEST(WeightPotential, HeisenbergTriple) {
  const auto g = GeometryContext::heisenberg(1);
  const auto w = potential(g, "1", "pow(rho, -2)*pow(t, 0.5)");
  EXPECT_NEAR(derive_weight_potential(w, at(g, {1, 0, 1})), 3.0, 1e-13);
}

TEST(WeightPotential, UnitPotentialGivesZero) {
  const auto g = GeometryContext::edge(2, 1);
  const auto w = potential(g, "psi", "1");
  EXPECT_EQ(derive_weight_potential(w, at(g, {0.5, 0.1, 0.2, 0.3})), 0.0);
}

TEST(WeightPotential, RejectsNonPositiveInputs) {
  const auto g = GeometryContext::euclidean(3);
  EXPECT_THROW(derive_weight_potential(potential(g, "1", "x1"), at(g, {-1, 0, 0})), DomainError);
  EXPECT_THROW(derive_weight_potential(potential(g, "x1", "r"), at(g, {-1, 0, 0})), DomainError);
  EXPECT_THROW(derive_weight_field(potential(g, "1", "r"), at(g, {1, 0, 0})), ConfigError);
}

TEST(WeightLp, DegenerateFieldAtCriticalExponent) {
  const auto g = GeometryContext::euclidean(3);
  auto w = potential(g, "1", "pow(r, 0)");
  w.p = 3.0;
  EXPECT_EQ(derive_weight_lp(w, at(g, {0.4, 0.5, 0.6})), 0.0);
  w.p = 1.5;
  EXPECT_THROW(derive_weight_lp(w, at(g, {0.4, 0.5, 0.6})), DomainError);
}

TEST(WeightLp, ReducesToQuadraticCase) {
  const auto g = GeometryContext::euclidean(4);
  const auto w = potential(g, "1", "1/r");
  const auto p = at(g, {1, 0, 0, 0});
  EXPECT_NEAR(derive_weight_lp(w, p), 1.0, 1e-14);
  EXPECT_NEAR(derive_weight_lp(w, p), derive_weight_potential(w, p), 1e-14);
}

TEST(WeightLp, EuclideanClosedForm) {
  const auto g = GeometryContext::euclidean(3);
  auto w = potential(g, "1", "1/r");
  w.p = 1.5;
  const auto p = at(g, {0.6, -0.8, 1.1});
  const double r = std::sqrt(0.36 + 0.64 + 1.21);
  EXPECT_NEAR(derive_weight_lp(w, p), std::pow(r, -1.5), 1e-13);
  WeightEvaluator eval(w);
  EXPECT_NEAR(eval(p).W, std::pow(r, -1.5), 1e-13);
}

TEST(WeightLp, HeisenbergClosedForm) {
  // W = -|b|^{p-2} b [Q + b(p-1) + beta - alpha] r^beta / rho^alpha, Q = 4.
  const auto g = GeometryContext::heisenberg(1);
  auto w = potential(g, "pow(r, beta - p)*pow(rho, 2*p - alpha)", "pow(rho, b)",
                     {{"beta", 0}, {"p", 2}, {"alpha", 4}, {"b", -1}});
  EXPECT_NEAR(derive_weight_lp(w, at(g, {1, 0, 1})), -0.5, 1e-14);
  // Optimal b = -(Q + beta - alpha)/p gives ((Q + beta - alpha)/p)^p r^beta / rho^alpha.
  w.params = {{"beta", 0}, {"p", 2}, {"alpha", 2}, {"b", -1}};
  EXPECT_NEAR(derive_weight_lp(w, at(g, {1, 0, 1})), 1.0 / std::sqrt(2.0), 1e-14);
  w.params = {{"beta", 0.5}, {"p", 3}, {"alpha", 1}, {"b", -3.5 / 3}};
  w.p = 3.0;
  const std::vector<double> x = {0.4, -0.3, 0.8};
  const double r = 0.5, rho = std::pow(std::pow(r, 4) + 0.64, 0.25);
  EXPECT_NEAR(derive_weight_lp(w, g.at(x)), std::pow(3.5 / 3, 3) * std::sqrt(r) / rho, 1e-13);
}

TEST(WeightProperties, PotentialEqualsItsField) {
  const auto g = GeometryContext::hyperbolic_ball(3);
  const auto pw = potential(g, "1 + x1*x1", "pow(rho, 0.5)*pow(sinh(rho), -1)");
  // F = -grad_g f / f built from the jets at each point, then compared.
  WeightEvaluator eval(pw);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 0.5);
  for (int i = 0; i < 50; ++i) {
    const auto p = at(g, {u(rng), u(rng), u(rng)});
    const auto s = eval(p);
    const double lp = derive_weight_lp(pw, p);
    EXPECT_NEAR(s.W, lp, 1e-11 * std::abs(s.W));
  }
}

TEST(WeightProperties, LinearInVAndScaleFreeInF) {
  const auto g = GeometryContext::grushin(2, 1, 1.0);
  const auto base = potential(g, "1 + y1*y1", "pow(rx, -0.2)*pow(rho, -0.3)");
  const auto scaled_V = potential(g, "3.5*(1 + y1*y1)", "pow(rx, -0.2)*pow(rho, -0.3)");
  const auto scaled_f = potential(g, "1 + y1*y1", "7*pow(rx, -0.2)*pow(rho, -0.3)");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = at(g, {u(rng), u(rng), u(rng)});
    const double w = derive_weight_potential(base, p);
    EXPECT_NEAR(derive_weight_potential(scaled_V, p), 3.5 * w, 1e-12 * std::abs(3.5 * w));
    EXPECT_NEAR(derive_weight_potential(scaled_f, p), w, 1e-12 * std::abs(w));
  }
}

TEST(Multipolar, TwoPolesLambdaRegime) {
  PoleConfiguration cfg{3, {{0, 0, 0}, {2, 0, 0}}, {0.125, 0.125}, PoleRegime::Lambda};
  const auto g = GeometryContext::euclidean(3);
  WeightProblem w{g};
  w.source = Field{multipolar_field(cfg)};
  const auto p = at(g, {1, 0, 0});
  EXPECT_NEAR(derive_weight_field(w, p), 0.5, 1e-14);
  EXPECT_NEAR(g.compile(multipolar_closed_form(cfg)).value(p.point()), 0.5, 1e-14);
}

TEST(Multipolar, SinglePoleIsClassical) {
  PoleConfiguration cfg{3, {{0, 0, 0}}, {0.25}, PoleRegime::Lambda};
  const auto g = GeometryContext::euclidean(3);
  WeightProblem w{g};
  w.source = Field{multipolar_field(cfg)};
  EXPECT_NEAR(derive_weight_field(w, at(g, {0.5, 0.5, 0.5})), 0.25 / 0.75, 1e-14);
}

TEST(Multipolar, TwoPolesMuRegime) {
  PoleConfiguration cfg{3, {{0, 0, 0}, {2, 0, 0}}, {0.5, 0.5}, PoleRegime::Mu};
  const auto g = GeometryContext::euclidean(3);
  WeightProblem w{g};
  w.source = Field{multipolar_field(cfg)};
  EXPECT_NEAR(derive_weight_field(w, at(g, {1, 1, 0})), 0.25, 1e-14);
}

TEST(Multipolar, ConstraintsAreEnforced) {
  EXPECT_THROW((PoleConfiguration{3, {{0, 0, 0}, {0, 0, 0}}, {0.125, 0.125}, PoleRegime::Lambda}.validate()),
               ConfigError);
  EXPECT_THROW((PoleConfiguration{3, {{0, 0, 0}, {1, 0, 0}}, {0.125, 0.2}, PoleRegime::Lambda}.validate()),
               ConfigError);
  EXPECT_THROW((PoleConfiguration{3, {{0, 0, 0}, {1, 0, 0}}, {1.5, -0.5}, PoleRegime::Mu}.validate()), ConfigError);
  EXPECT_NO_THROW((PoleConfiguration{3, {{0, 0, 0}, {1, 0, 0}}, {0.7, 0.3}, PoleRegime::Mu}.validate()));
}
