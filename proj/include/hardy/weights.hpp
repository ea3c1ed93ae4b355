// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hardy weights from a choice of (V, f) or (V, F):
//
//   field      W = div_g(V F) - V |F|^2
//   potential  W = -div_g(V grad_g f) / f
//   L^p        W = div_g(V |F|^{p-2} F) - (p - 1) V |F|^p
//
// With these W the identity
//   int V |grad u|^2 = int W u^2 + int V |grad u + u F|^2
// holds for every compactly supported u, so the last term is the remainder.

#include <optional>
#include <variant>
#include <vector>

#include "hardy/expression.hpp"
#include "hardy/geometry.hpp"

namespace hardy {

struct Potential {
  ScalarField f;
};

struct Field {
  VectorFieldExpr F;  // components in frame coordinates
};

struct WeightProblem {
  GeometryContext ctx;
  ScalarField V = ScalarField::constant(1.0);
  std::variant<Potential, Field> source;
  double p = 2.0;
  ParamMap params;
  std::optional<ScalarField> closed_form_W;
  std::optional<ScalarField> target_W;
  std::optional<double> claimed;
};

/// Everything the identity checks need at one point.
struct WeightSample {
  double V = 0.0;
  double W = 0.0;
  FrameVector F{};  // field; -grad_g f / f for a potential
  double f = 1.0;   // 1 for a field source
  FrameVector grad_f{};
};

/// Compiled form of a WeightProblem. Evaluation is reentrant.
class WeightEvaluator {
 public:
  /// general_p keeps the L^p formulas at p = 2 instead of the quadratic ones.
  explicit WeightEvaluator(const WeightProblem& prob, bool general_p = false);

  const GeometryContext& context() const noexcept { return ctx_; }
  bool is_potential() const noexcept { return potential_; }
  /// V is the constant 1 (enables the second remainder form).
  bool unit_V() const noexcept { return unit_V_; }
  double p() const noexcept { return p_; }
  /// The quadratic shortcuts are in use (p = 2 and not general_p).
  bool quadratic() const noexcept { return p_ == 2.0 && !general_; }

  WeightSample operator()(const FramePoint& pt) const;

  std::optional<double> closed_form(const FramePoint& pt) const;
  std::optional<double> target(const FramePoint& pt) const;

 private:
  GeometryContext ctx_;
  double p_ = 2.0;
  bool general_ = false;
  bool potential_ = false;
  bool unit_V_ = false;
  CompiledField V_;
  CompiledField f_;
  std::vector<CompiledField> F_;
  std::optional<CompiledField> closed_;
  std::optional<CompiledField> target_;
};

/// div_g(V F) - V |F|^2; requires a field source and p = 2.
double derive_weight_field(const WeightProblem& prob, const FramePoint& pt);
/// -div_g(V grad_g f) / f; requires a potential source and p = 2.
double derive_weight_potential(const WeightProblem& prob, const FramePoint& pt);
/// L^p weight for either source (a potential uses F = -grad_g f / f).
double derive_weight_lp(const WeightProblem& prob, const FramePoint& pt);

enum class PoleRegime { Lambda, Mu };

/// Poles a_i in R^n with coefficients summing to (n-2)^2/4 (Lambda) or
/// n-2 (Mu).
struct PoleConfiguration {
  int n = 3;
  std::vector<std::vector<double>> poles;
  std::vector<double> coefficients;
  PoleRegime regime = PoleRegime::Lambda;

  /// Throws ConfigError on a violated constraint.
  void validate() const;
  /// alpha_i of the field sum_i alpha_i (x - a_i) / |x - a_i|^2.
  std::vector<double> alphas() const;
};

/// sum_i alpha_i (x - a_i) / |x - a_i|^2 in the coordinates x1..xn.
VectorFieldExpr multipolar_field(const PoleConfiguration& cfg);

/// Closed form of the weight derived from multipolar_field:
///   Lambda: sum lambda_i/r_i^2 + 4/(n-2)^2 sum_{i<j} lambda_i lambda_j |a_i-a_j|^2/(r_i^2 r_j^2)
///   Mu:     sum_{i<j} mu_i mu_j |a_i-a_j|^2/(r_i^2 r_j^2)
ScalarField multipolar_closed_form(const PoleConfiguration& cfg);

}  // namespace hardy
