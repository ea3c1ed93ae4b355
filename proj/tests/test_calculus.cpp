// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/expression.hpp"

using namespace hardy;

namespace {

std::vector<double> pt(std::initializer_list<double> v) { return v; }

}  // namespace

TEST(Parser, PowerOfNorm) {
  const auto f = parse_expression("pow(norm(x1,x2,x3), -0.5)");
  const Jet2 j = jet2_eval(f, pt({2, 0, 0}));
  EXPECT_NEAR(j.value, std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(j.grad[0], -std::pow(2.0, -2.5), 1e-15);
  EXPECT_EQ(j.grad[1], 0.0);
  EXPECT_EQ(j.grad[2], 0.0);
}

TEST(Parser, Constant) {
  const auto f = parse_expression("1");
  const Jet2 j = jet2_eval(f, pt({0.3, -2.0}));
  EXPECT_EQ(j.value, 1.0);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(j.grad[i], 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(j.hess[i], 0.0);
}

TEST(Parser, UnknownFunctionIsRejected) {
  EXPECT_THROW(parse_expression("pow(t,0.5) * pow(e(),-1)"), ParseError);
}

TEST(Parser, SyntaxErrorsCarryOffset) {
  try {
    parse_expression("x1 + * x2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse_expression("pow(x1)"), ParseError);
  EXPECT_THROW(parse_expression("exp(x1, x2)"), ParseError);
  EXPECT_THROW(parse_expression("(x1"), ParseError);
  EXPECT_THROW(parse_expression("x1 x2"), ParseError);
}

TEST(Parser, UnboundParameterIsAConfigError) {
  const auto f = parse_expression("a*x1");
  EXPECT_THROW(jet2_eval(f, pt({1.0})), ConfigError);
  EXPECT_NEAR(jet2_eval(f, pt({2.0}), {{"a", 3.0}}).value, 6.0, 0);
}

TEST(Parser, RoundTripOnNormalizedTrees) {
  const char* sources[] = {
      "x1 - (x2 - x3)",     "x1/(x2*x3)",           "-x1*x2",          "pow(x1, -0.5) + 3",
      "-(x1 + x2)",         "2*sinh(x1)/cosh(x2)", "norm(x1, x2, 1)", "x1 - -x2",
      "exp(-1/(x1*x1))",    "abs(x1)*coth(x2)",    "1/(2 + x1)/x2",   "pow(pow(x1, 4) + x2*x2, 0.25)",
  };
  for (const char* s : sources) {
    const auto f = normalize(parse_expression(s));
    const auto printed = f.to_string();
    EXPECT_EQ(parse_expression(printed), f) << s << " -> " << printed;
    EXPECT_EQ(parse_expression(printed).to_string(), printed);
  }
}

TEST(Jet, BilinearProduct) {
  const Jet2 j = jet2_eval(parse_expression("x1*x2"), pt({3, 5}));
  EXPECT_EQ(j.value, 15.0);
  EXPECT_EQ(j.grad[0], 5.0);
  EXPECT_EQ(j.grad[1], 3.0);
  EXPECT_EQ(j.hessian(0, 1), 1.0);
  EXPECT_EQ(j.hessian(0, 0), 0.0);
  EXPECT_EQ(j.hessian(1, 1), 0.0);
}

TEST(Jet, DomainErrorsNameTheSubexpression) {
  try {
    jet2_eval(parse_expression("1 + log(x1 - 2)"), pt({1.0}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x1 - 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(jet2_eval(parse_expression("1/x1"), pt({0.0})), DomainError);
  EXPECT_THROW(jet2_eval(parse_expression("abs(x1)"), pt({0.0})), DomainError);
  EXPECT_THROW(jet2_eval(parse_expression("coth(x1)"), pt({0.0})), DomainError);
}

TEST(Jet, AbsFollowsTheSign) {
  const Jet2 j = jet2_eval(parse_expression("abs(x1*x2)"), pt({-2.0, 3.0}));
  EXPECT_EQ(j.value, 6.0);
  EXPECT_EQ(j.grad[0], -3.0);
  EXPECT_EQ(j.grad[1], 2.0);
  EXPECT_EQ(j.hessian(0, 1), -1.0);
}

// Random polynomials of degree <= 4 in <= 4 variables against derivatives
// computed term by term from the monomial list.
TEST(Jet, RandomPolynomialsMatchTermwiseDerivatives) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> expo(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 4;
    struct Term {
      double c;
      std::array<int, 4> e;
    };
    std::vector<Term> terms;
    for (int t = 0; t < 6; ++t) {
      Term term{coef(rng), {0, 0, 0, 0}};
      int budget = 4;
      for (int i = 0; i < m; ++i) {
        const int e = std::min(budget, expo(rng) % 3);
        term.e[i] = e;
        budget -= e;
      }
      terms.push_back(term);
    }
    std::string src;
    for (const auto& t : terms) {
      if (!src.empty()) src += " + ";
      src += "(" + std::to_string(t.c) + ")";
      for (int i = 0; i < m; ++i)
        if (t.e[i]) src += "*pow(x" + std::to_string(i + 1) + ", " + std::to_string(t.e[i]) + ")";
    }
    std::vector<double> x(m);
    for (auto& v : x) v = coef(rng);
    const Jet2 j = jet2_eval(parse_expression(src), x);

    auto mono = [&](const Term& t, int di, int dj) {
      std::array<int, 4> e = t.e;
      double c = std::stod(std::to_string(t.c));
      for (int d : {di, dj}) {
        if (d < 0) continue;
        c *= e[d];
        e[d] = std::max(0, e[d] - 1);
      }
      for (int i = 0; i < m; ++i) c *= std::pow(x[i], e[i]);
      return c;
    };
    double value = 0.0, scale = 0.0;
    std::array<double, 4> grad{};
    std::array<std::array<double, 4>, 4> hess{};
    for (const auto& t : terms) {
      value += mono(t, -1, -1);
      scale += std::abs(mono(t, -1, -1));
      for (int i = 0; i < m; ++i) {
        grad[i] += mono(t, i, -1);
        for (int k = 0; k < m; ++k) hess[i][k] += mono(t, i, k);
      }
    }
    const double tol = 1e-13 * std::max(1.0, scale * 16);
    EXPECT_NEAR(j.value, value, tol) << src;
    for (int i = 0; i < m; ++i) {
      EXPECT_NEAR(j.grad[i], grad[i], tol) << src;
      for (int k = 0; k < m; ++k) EXPECT_NEAR(j.hessian(i, k), hess[i][k], tol) << src;
    }
  }
}

TEST(Jet, ExpChainRule) {
  const auto f = parse_expression("x1*x2 + sinh(x3) + x3*x3*x1 - 0.3*x2");
  const std::vector<double> x = {0.4, -0.7, 1.1};
  const Jet2 jf = jet2_eval(f, x);
  const Jet2 je = jet2_eval(ScalarField::call(Builtin::Exp, {f}), x);
  const double e = std::exp(jf.value);
  EXPECT_NEAR(je.value, e, 1e-13 * e);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(je.grad[i], e * jf.grad[i], 1e-13 * e);
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_NEAR(je.hessian(i, k), e * (jf.grad[i] * jf.grad[k] + jf.hessian(i, k)), 1e-13 * e);
  }
}

TEST(Jet, ParameterSubstitutionCommutesWithEvaluation) {
  const auto f = parse_expression("pow(x1, a) * exp(b*x2)");
  const ParamMap params = {{"a", 1.5}, {"b", -0.25}};
  const std::vector<double> x = {2.0, 3.0};
  const Jet2 direct = jet2_eval(f, x, params);
  const Jet2 bound = jet2_eval(f.bind(params), x);
  EXPECT_EQ(direct.value, bound.value);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(direct.hess[i], bound.hess[i]);
}

TEST(Jet, SharedSubtreesAreEvaluatedOnce) {
  const auto r = parse_expression("norm(x1, x2)");
  const auto f = r * r + pow(r, 3.0);
  const Jet2 j = jet2_eval(f, pt({3, 4}));
  EXPECT_NEAR(j.value, 25.0 + 125.0, 1e-12);
  EXPECT_NEAR(j.grad[0], 2 * 3 + 3 * 5 * 3, 1e-12);
}
