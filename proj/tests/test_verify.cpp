// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/verify.hpp"

using namespace hardy;

namespace {

WeightProblem potential(const GeometryContext& g, const char* V, const char* f) {
  WeightProblem w{g};
  w.V = g.parse(V);
  w.source = Potential{g.parse(f)};
  return w;
}

WeightProblem field(const GeometryContext& g, const char* V, std::vector<const char*> F) {
  WeightProblem w{g};
  w.V = g.parse(V);
  VectorFieldExpr v;
  for (const char* c : F) v.components.push_back(g.parse(c));
  w.source = Field{v};
  return w;
}

std::vector<TestFunction> bumps(const GeometryContext& g, const Box& box, int count) {
  std::vector<TestFunction> out;
  for (int s = 0; s < count; ++s) out.push_back(make_bump(g, box, s));
  return out;
}

}  // namespace

TEST(Identity, GridOutsideTheSupportGivesZeros) {
  const auto g = GeometryContext::euclidean(3);
  const auto u = make_bump(g, Box::parse("1,2;1,2;1,2"), 0);
  const auto r = check_identity(potential(g, "1", "pow(r, -0.5)"), u, build_grid(Box::parse("3,4;3,4;3,4"), 8));
  for (const auto& v : r.resolutions) {
    EXPECT_EQ(v.lhs, 0.0);
    EXPECT_EQ(v.weight_term, 0.0);
    EXPECT_EQ(v.remainder_term, 0.0);
    EXPECT_EQ(v.residual, 0.0);
  }
}

TEST(Identity, ClassicalPotentialOnAUnitCube) {
  const auto g = GeometryContext::euclidean(3);
  const Box box = Box::parse("1,2;1,2;1,2");
  const auto us = bumps(g, box, 5);
  const auto reps = check_identity_batch(potential(g, "1", "pow(r, -0.5)"), us, build_grid(box, 24));
  for (const auto& r : reps) {
    EXPECT_TRUE(r.passes(kDefaultTolerance)) << r.seed;
    EXPECT_LE(r.fine().relative_residual, 1e-9) << r.seed;
    EXPECT_GT(r.fine().lhs, 0.0);
    EXPECT_GE(r.fine().remainder_term, 0.0);
    // Both remainder forms of a potential with V = 1 agree.
    ASSERT_TRUE(r.remainder_form_gap());
    EXPECT_LE(*r.remainder_form_gap(), 1e-10) << r.seed;
  }
}

TEST(Identity, BatchMatchesSingleChecks) {
  const auto g = GeometryContext::euclidean(2);
  const Box box = Box::parse("0.5,1.5;-0.5,0.5");
  const auto us = bumps(g, box, 3);
  const auto prob = field(g, "pow(r, 2)", {"x1/pow(r, 2)", "x2"});
  const auto batch = check_identity_batch(prob, us, build_grid(box, 16));
  for (std::size_t k = 0; k < us.size(); ++k) {
    const auto single = check_identity(prob, us[k], build_grid(box, 16));
    EXPECT_EQ(single.fine().lhs, batch[k].fine().lhs);
    EXPECT_EQ(single.coarse().remainder_term, batch[k].coarse().remainder_term);
  }
}

TEST(Identity, ResidualShrinksUnderRefinement) {
  const auto g = GeometryContext::euclidean(2);
  const Box box = Box::parse("0.5,1.5;-0.5,0.5");
  const auto u = make_bump(g, box, 11);
  const auto prob = potential(g, "exp(x2)", "pow(r, -0.3)");
  const auto a = check_identity(prob, u, build_grid(box, 8));
  const auto b = check_identity(prob, u, build_grid(box, 16));
  EXPECT_LT(b.fine().relative_residual, a.coarse().relative_residual);
  EXPECT_LE(b.fine().relative_residual, 1e-8);
}

TEST(Identity, NonEuclideanContexts) {
  struct Case {
    GeometryContext g;
    const char* box;
    const char* V;
    const char* f;
  };
  const std::vector<Case> cases = {
      {GeometryContext::half_space(2), "-0.5,0.5;0.5,1.5", "1", "pow(x2, 0.5)"},
      {GeometryContext::hyperbolic_ball(3), "0.1,0.4;0.1,0.4;-0.2,0.2", "1", "pow(rho, -0.5)"},
      {GeometryContext::heisenberg(1), "0.3,0.8;0.2,0.6;-0.3,0.3", "pow(r, 2)", "pow(rho, -1)"},
  };
  for (const auto& c : cases) {
    const Box box = Box::parse(c.box);
    const auto us = bumps(c.g, box, 2);
    for (const auto& r : check_identity_batch(potential(c.g, c.V, c.f), us, build_grid(box, 24)))
      EXPECT_TRUE(r.passes(kDefaultTolerance)) << c.g.spec() << " seed " << r.seed << " rel "
                                               << r.fine().relative_residual;
  }
}

TEST(IdentityLp, EuclideanExponents) {
  const auto g = GeometryContext::euclidean(3);
  const Box box = Box::parse("0.5,1.5;0.5,1.5;0.5,1.5");
  for (double p : {1.5, 3.0}) {
    auto prob = field(g, "1", {"x1/pow(r, 2)", "x2/pow(r, 2)", "x3/pow(r, 2)"});
    prob.p = p;
    for (int s = 0; s < 3; ++s) {
      const auto r = check_identity_lp(prob, make_bump(g, box, s), build_grid(box, 24));
      EXPECT_TRUE(r.passes(kDefaultTolerance)) << p << " " << s << " " << r.fine().relative_residual;
      EXPECT_LE(r.fine().relative_residual, 1e-7) << p;
      EXPECT_GE(r.fine().min_pointwise, kPointwiseFloor);
    }
  }
}

TEST(IdentityLp, ReducesToTheQuadraticRouteAtTwo) {
  const auto g = GeometryContext::euclidean(3);
  const Box box = Box::parse("0.3,1;0.3,1;0.3,1");
  const auto pot = potential(g, "pow(r, 0.5)", "pow(r, -0.5)");
  const auto fld = field(g, "1", {"x1/pow(r, 2)", "x2", "exp(x3)"});
  for (const auto* prob : {&pot, &fld}) {
    const auto u = make_bump(g, box, 4);
    const auto a = check_identity(*prob, u, build_grid(box, 16));
    const auto b = check_identity_lp(*prob, u, build_grid(box, 16));
    for (int k = 0; k < 2; ++k) {
      const double s = std::abs(a.resolutions[k].lhs);
      EXPECT_NEAR(a.resolutions[k].lhs, b.resolutions[k].lhs, 1e-11 * s);
      EXPECT_NEAR(a.resolutions[k].weight_term, b.resolutions[k].weight_term, 1e-11 * s);
      EXPECT_NEAR(a.resolutions[k].remainder_term, b.resolutions[k].remainder_term, 1e-11 * s);
      EXPECT_GE(b.resolutions[k].min_pointwise, kPointwiseFloor);
    }
    const std::vector<double> x{0.4, -0.7, 1.1};
    EXPECT_NEAR(derive_weight_lp(*prob, g.at(x)), WeightEvaluator(*prob)(g.at(x)).W, 1e-12);
  }
}

TEST(IdentityLp, RejectsExponentsAtMostOne) {
  const auto g = GeometryContext::euclidean(2);
  auto prob = potential(g, "1", "pow(r, -0.5)");
  prob.p = 1.0;
  const Box box = Box::parse("1,2;1,2");
  EXPECT_THROW(check_identity_lp(prob, make_bump(g, box, 0), build_grid(box, 8)), ConfigError);
  prob.p = 3.0;
  EXPECT_THROW(check_identity(prob, make_bump(g, box, 0), build_grid(box, 8)), ConfigError);
}

TEST(Inequality, ClassicalConstantHoldsAndLargerOnesFail) {
  const auto g = GeometryContext::euclidean(3);
  auto prob = potential(g, "1", "pow(r, -0.5)");
  prob.target_W = g.parse("1/pow(r, 2)");
  const Box box = Box::parse("0.2,1;0.2,1;0.2,1");
  const auto u = make_bump(g, box, 3);
  EXPECT_TRUE(check_inequality(prob, u, build_grid(box, 24), 0.25).passes());
  EXPECT_FALSE(check_inequality(prob, u, build_grid(box, 24), 1000.0).passes());
}

TEST(Adjointness, AllContexts) {
  struct Case {
    GeometryContext g;
    const char* box;
  };
  const std::vector<Case> cases = {
      {GeometryContext::euclidean(3), "0.5,1;0.2,0.9;-0.4,0.4"},
      {GeometryContext::half_space(3), "-0.5,0.5;-0.5,0.5;0.3,1"},
      {GeometryContext::hyperbolic_ball(2), "0.1,0.5;-0.3,0.3"},
      {GeometryContext::heisenberg(1), "0.3,0.8;0.2,0.6;-0.3,0.3"},
      {GeometryContext::grushin(1, 1, 1.0), "0.3,1;-0.5,0.5"},
      {GeometryContext::edge(1, 1), "0.2,0.7;-0.5,0.5;-0.5,0.5"},
  };
  for (const auto& c : cases) {
    std::vector<CompiledField> F;
    for (std::size_t i = 0; i < c.g.frame_size(); ++i) {
      const std::string& x = c.g.coordinates()[i % c.g.ambient_dim()];
      F.push_back(c.g.compile(c.g.parse("exp(" + x + ")*(1+" + std::to_string(i) + "*" + x + "*" + x + ")")));
    }
    const Box box = Box::parse(c.box);
    const auto u = make_bump(c.g, box, 2);
    const auto a = check_adjointness(c.g, F, u, build_grid(box, 32));
    const auto b = check_adjointness(c.g, F, u, build_grid(box, 64));
    EXPECT_LE(b.relative_residual, 1e-8) << c.g.spec();
    EXPECT_LE(b.relative_residual, a.relative_residual) << c.g.spec();
    EXPECT_GT(std::abs(b.gradient_term), 1e-6) << c.g.spec();
  }
}

TEST(Adjointness, ComponentCountMustMatch) {
  const auto g = GeometryContext::euclidean(2);
  const Box box = Box::parse("1,2;1,2");
  std::vector<CompiledField> F{g.compile(g.parse("x1"))};
  EXPECT_THROW(check_adjointness(g, F, make_bump(g, box, 0), build_grid(box, 8)), ConfigError);
}
