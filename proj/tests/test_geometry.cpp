// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/geometry.hpp"

using namespace hardy;

namespace {

FramePoint at(const GeometryContext& g, std::vector<double> x) { return g.at(x); }

CompiledField field(const GeometryContext& g, const char* src) { return g.compile(g.parse(src)); }

}  // namespace

TEST(FrameGradient, HyperbolicCoordinateFunction) {
  const auto g = GeometryContext::hyperbolic_ball(2);
  const auto v = frame_gradient(g, field(g, "x1"), at(g, {0.5, 0.0}));
  EXPECT_NEAR(v[0], 3.0 / 8.0, 1e-15);
  EXPECT_EQ(v[1], 0.0);
}

TEST(FrameGradient, ConstantHasZeroGradient) {
  for (const char* spec : {"euclidean:n=3", "heisenberg:n=1", "grushin:d=2,k=1,gamma=2", "edge:n=2,q=1"}) {
    const auto g = GeometryContext::from_spec(spec);
    std::vector<double> x(g.ambient_dim(), 0.5);
    const auto v = frame_gradient(g, field(g, "7"), g.at(x));
    for (std::size_t i = 0; i < g.frame_size(); ++i) EXPECT_EQ(v[i], 0.0) << spec;
  }
}

TEST(FrameGradient, HeisenbergVerticalCoordinate) {
  const auto g = GeometryContext::heisenberg(1);
  const auto v = frame_gradient(g, field(g, "t"), at(g, {1.0, 0.0, 1.0}));
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], -2.0);
}

TEST(FrameDivergence, IdentityFieldHasDivergenceN) {
  const auto g = GeometryContext::euclidean(3);
  VectorFieldExpr F{{g.parse("x1"), g.parse("x2"), g.parse("x3")}};
  EXPECT_NEAR(frame_divergence(g, F, at(g, {0.3, -1.2, 2.0})), 3.0, 1e-14);
}

TEST(FrameDivergence, InverseSquareField) {
  const auto g = GeometryContext::euclidean(3);
  VectorFieldExpr F{{g.parse("x1/(r*r)"), g.parse("x2/(r*r)"), g.parse("x3/(r*r)")}};
  EXPECT_NEAR(frame_divergence(g, F, at(g, {1.0, 0.0, 0.0})), 1.0, 1e-14);
}

// Edge operator written out: (t d_t)^2 - q t d_t + Lap_x + t^2 Lap_y.
TEST(FrameDivergence, EdgeMatchesExplicitOperator) {
  const auto g = GeometryContext::edge(2, 1);
  // F = grad_E(h) for h = t^2 x1 + y1^2 t: frame components (t h_t, h_x1, h_x2, t h_y1).
  VectorFieldExpr F{{g.parse("t*(2*t*x1 + y1*y1)"), g.parse("t*t"), g.parse("0"), g.parse("t*2*y1*t")}};
  const std::vector<double> x = {0.5, 0.3, -0.2, 0.7};
  const double t = x[0], x1 = x[1], y1 = x[3];
  // (t d_t)^2 h = t d_t (2 t^2 x1 + t y1^2) = 4 t^2 x1 + t y1^2
  const double expected = (4 * t * t * x1 + t * y1 * y1) - 1.0 * (2 * t * t * x1 + t * y1 * y1) + 0.0 + t * t * (2 * t);
  EXPECT_NEAR(frame_divergence(g, F, g.at(x)), expected, 1e-14);
  EXPECT_NEAR(laplace_beltrami(g, field(g, "t*t*x1 + y1*y1*t"), g.at(x)), expected, 1e-14);
}

TEST(LaplaceBeltrami, FundamentalSolutionIsHarmonic) {
  const auto g = GeometryContext::euclidean(3);
  EXPECT_NEAR(laplace_beltrami(g, field(g, "1/r"), at(g, {2.0, 0.0, 0.0})), 0.0, 1e-15);
}

TEST(LaplaceBeltrami, HyperbolicSquaredDistance) {
  const auto g = GeometryContext::hyperbolic_ball(3);
  const double lb = laplace_beltrami(g, field(g, "rho*rho"), at(g, {std::tanh(0.5), 0.0, 0.0}));
  EXPECT_NEAR(lb, 2.0 + 4.0 / std::tanh(1.0), 1e-12);
}

// Heisenberg sublaplacian of r^4 + t^2: Lap_(x,y) r^4 = 16 r^2 (in R^2), the
// mixed term 4 (y d_x - x d_y) d_t vanishes on radial-times-t^2 and 4 r^2 d_t^2
// gives 8 r^2. Total 24 r^2.
TEST(LaplaceBeltrami, HeisenbergHomogeneousNorm) {
  const auto g = GeometryContext::heisenberg(1);
  EXPECT_NEAR(laplace_beltrami(g, field(g, "pow(r, 4) + t*t"), at(g, {1.0, 0.0, 0.0})), 24.0, 1e-13);
  EXPECT_NEAR(laplace_beltrami(g, field(g, "pow(rho, 4)"), at(g, {0.6, -0.4, 0.9})), 24.0 * 0.52, 1e-12);
}

// Each context against its operator written out in ambient derivatives.
static double explicit_operator(const GeometryContext& g, const Jet2& j, const std::vector<double>& x) {
  auto H = [&](std::size_t a, std::size_t b) { return j.hessian(a, b); };
  double lap = 0.0;
  switch (g.kind()) {
    case GeometryKind::Euclidean:
    case GeometryKind::HalfSpace:
      for (std::size_t i = 0; i < x.size(); ++i) lap += H(i, i);
      return lap;
    case GeometryKind::HyperbolicBall: {
      const double n = static_cast<double>(x.size());
      double r2 = 0.0, radial = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        lap += H(i, i);
        r2 += x[i] * x[i];
        radial += x[i] * j.grad[i];
      }
      const double c = (1 - r2) / 2;
      return c * c * lap + (n - 2) * c * radial;
    }
    case GeometryKind::Heisenberg: {
      // Lap_(x,y) + 4 r^2 d_t^2 + 4 (y d_x - x d_y) d_t, n = 1.
      const double r2 = x[0] * x[0] + x[1] * x[1];
      return H(0, 0) + H(1, 1) + 4 * r2 * H(2, 2) + 4 * (x[1] * H(0, 2) - x[0] * H(1, 2));
    }
    case GeometryKind::Grushin: {
      const std::size_t d = static_cast<std::size_t>(g.parameter("d"));
      const double gamma = g.parameter("gamma");
      double rx2 = 0.0, lx = 0.0, ly = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        rx2 += x[i] * x[i];
        lx += H(i, i);
      }
      for (std::size_t i = d; i < x.size(); ++i) ly += H(i, i);
      return lx + std::pow(rx2, gamma) * ly;
    }
    case GeometryKind::Edge: {
      // (t d_t)^2 - q t d_t + Lap_x + t^2 Lap_y
      const std::size_t n = static_cast<std::size_t>(g.parameter("n"));
      const double q = g.parameter("q"), t = x[0];
      double lx = 0.0, ly = 0.0;
      for (std::size_t i = 1; i <= n; ++i) lx += H(i, i);
      for (std::size_t i = n + 1; i < x.size(); ++i) ly += H(i, i);
      return t * t * H(0, 0) + t * j.grad[0] - q * t * j.grad[0] + lx + t * t * ly;
    }
    default:
      return NAN;
  }
}

TEST(LaplaceBeltrami, MatchesExplicitOperators) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 0.55);
  for (const char* spec : {"euclidean:n=3", "halfspace:n=2", "hyperbolic:n=3", "heisenberg:n=1",
                           "grushin:d=3,k=1,gamma=1", "grushin:d=2,k=2,gamma=1.5", "edge:n=2,q=1"}) {
    const auto g = GeometryContext::from_spec(spec);
    const auto& c = g.coordinates();
    std::string src = "exp(0.3*" + c[0] + ")*" + c.back();
    for (std::size_t i = 0; i < c.size(); ++i) src += " + " + c[i] + "*" + c[i] + "*" + c[(i + 1) % c.size()];
    const auto f = field(g, src.c_str());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(g.ambient_dim());
      for (auto& v : x) v = u(rng);
      const double a = laplace_beltrami(g, f, g.at(x));
      const double b = explicit_operator(g, f.jet2(x), x);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b))) << spec;
    }
  }
}

TEST(LaplaceBeltrami, HyperbolicRadialFormula) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = GeometryContext::hyperbolic_ball(3);
  const auto f = field(g, "sinh(rho)*rho + pow(rho, 1.5)");
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 3> dir{u(rng), u(rng), u(rng)};
    const double nrm = std::hypot(dir[0], dir[1], dir[2]);
    const double rho = 0.05 + 2.0 * (u(rng) + 1.0);
    const double r = std::tanh(rho / 2);
    std::vector<double> x = {r * dir[0] / nrm, r * dir[1] / nrm, r * dir[2] / nrm};
    const double d1 = std::cosh(rho) * rho + std::sinh(rho) + 1.5 * std::sqrt(rho);
    const double d2 = std::sinh(rho) * rho + 2 * std::cosh(rho) + 0.75 / std::sqrt(rho);
    const double expected = d2 + 2.0 * d1 / std::tanh(rho);
    EXPECT_NEAR(laplace_beltrami(g, f, g.at(x)), expected, 1e-10 * std::abs(expected));
  }
}

TEST(Context, SpecParsing) {
  EXPECT_EQ(GeometryContext::from_spec("heisenberg:n=1").ambient_dim(), 3u);
  EXPECT_EQ(GeometryContext::from_spec("grushin:d=3,k=1,gamma=1").frame_size(), 4u);
  EXPECT_EQ(GeometryContext::from_spec("edge:n=2,q=1").ambient_dim(), 4u);
  EXPECT_EQ(GeometryContext::from_spec("euclidean").ambient_dim(), 3u);
  EXPECT_THROW(GeometryContext::from_spec("sphere:n=2"), ConfigError);
  EXPECT_THROW(GeometryContext::from_spec("euclidean:n=2.5"), ConfigError);
  EXPECT_THROW(GeometryContext::from_spec("euclidean:m=2"), ConfigError);
  EXPECT_THROW(GeometryContext::from_spec("euclidean:n"), ConfigError);
}

TEST(Context, DomainsAndMargins) {
  const auto h = GeometryContext::hyperbolic_ball(2);
  EXPECT_THROW(h.at(std::vector<double>{0.8, 0.8}), DomainError);
  EXPECT_THROW(h.at(std::vector<double>{0.0, 0.0}), DomainError);
  EXPECT_TRUE(h.box_admissible(Box::parse("0.2,0.5;0.1,0.4"), 1e-2));
  EXPECT_FALSE(h.box_admissible(Box::parse("-0.2,0.5;-0.1,0.4"), 1e-2));
  const auto e = GeometryContext::edge(2, 1);
  EXPECT_FALSE(e.box_admissible(Box::parse("0,0.5;0,1;0,1;0,1"), 1e-2));
  EXPECT_TRUE(e.box_admissible(Box::parse("0.2,0.5;-1,1;-1,1;-1,1"), 1e-2));
  const auto gr = GeometryContext::grushin(2, 1, 1.0);
  EXPECT_FALSE(gr.box_admissible(Box::parse("-1,1;-1,1;0.5,1"), 1e-2));
  EXPECT_TRUE(gr.box_admissible(Box::parse("0.5,1;-1,1;-3,3"), 1e-2));
}

TEST(Context, HyperbolicDensity) {
  const auto g = GeometryContext::hyperbolic_ball(3);
  const auto p = g.at(std::vector<double>{0.5, 0.0, 0.0});
  EXPECT_NEAR(p.density, 8.0 / std::pow(0.75, 3), 1e-12);
  EXPECT_NEAR(p.log_density_grad[0], 3.0 * 2 * 0.5 / 0.75, 1e-12);
}
