// SPDX-License-Identifier: Apache-2.0
#include "hardy/weights.hpp"

#include <cmath>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

namespace {

bool is_unit(const ScalarField& f) {
  const auto& n = *f.root();
  return n.kind == NodeKind::Number && n.number == 1.0;
}

std::string where(const FramePoint& pt) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < pt.ambient; ++i) os << (i ? ", " : "") << pt.x[i];
  os << ")";
  return os.str();
}

// div_g(V |F|^{p-2} F) - (p-1) V |F|^p from 1-jets of V and F.
double lp_weight(const FramePoint& pt, const Jet1& V, std::span<const Jet1> F, double p) {
  const std::size_t k = F.size();
  Jet1 s = Jet1::constant(0.0, pt.ambient);
  for (const auto& c : F) s += c * c;
  std::array<Jet1, kMaxDim> G{};
  if (s.value == 0.0) {
    if (p < 2.0) throw DomainError("|F| vanishes at " + where(pt) + " with p < 2");
    if (p > 2.0) return 0.0;
  }
  Jet1 q = Jet1::constant(1.0, pt.ambient);
  if (p != 2.0) {
    const double e = 0.5 * (p - 2.0);
    const double se = std::pow(s.value, e);
    q = s.apply(se, e * se / s.value);
  }
  const Jet1 vq = V * q;
  for (std::size_t i = 0; i < k; ++i) G[i] = vq * F[i];
  return divergence(pt, {G.data(), k}) - (p - 1.0) * V.value * std::pow(s.value, 0.5 * p);
}

}  // namespace

WeightEvaluator::WeightEvaluator(const WeightProblem& prob, bool general_p)
    : ctx_(prob.ctx), p_(prob.p), general_(general_p) {
  if (!(p_ > 1.0)) throw ConfigError("exponent p must exceed 1");
  const ScalarField V = prob.V.bind(prob.params);
  unit_V_ = is_unit(V);
  V_ = ctx_.compile(V, prob.params);
  if (const auto* pot = std::get_if<Potential>(&prob.source)) {
    potential_ = true;
    f_ = ctx_.compile(pot->f, prob.params);
  } else {
    const auto& F = std::get<Field>(prob.source).F;
    if (F.components.size() != ctx_.frame_size())
      throw ConfigError("field has " + std::to_string(F.components.size()) + " components, frame of " + ctx_.spec() +
                        " has " + std::to_string(ctx_.frame_size()));
    for (const auto& c : F.components) F_.push_back(ctx_.compile(c, prob.params));
  }
  if (prob.closed_form_W) closed_ = ctx_.compile(*prob.closed_form_W, prob.params);
  if (prob.target_W) target_ = ctx_.compile(*prob.target_W, prob.params);
}

WeightSample WeightEvaluator::operator()(const FramePoint& pt) const {
  const auto x = pt.point();
  const std::size_t k = pt.frame;
  WeightSample s;
  const Jet1 V = V_.jet1(x);
  if (!(V.value > 0.0)) throw DomainError("V is not positive at " + where(pt));
  s.V = V.value;
  std::array<Jet1, kMaxDim> F{};
  if (potential_) {
    const Jet2 f = f_.jet2(x);
    if (!(f.value > 0.0)) throw DomainError("f is not positive at " + where(pt));
    s.f = f.value;
    std::array<Jet1, kMaxDim> Xf{};
    for (std::size_t i = 0; i < k; ++i) {
      Xf[i] = frame_derivative(pt, f, i);
      s.grad_f[i] = Xf[i].value;
      s.F[i] = -Xf[i].value / f.value;
    }
    if (quadratic()) {
      std::array<Jet1, kMaxDim> G{};
      for (std::size_t i = 0; i < k; ++i) G[i] = V * Xf[i];
      s.W = -divergence(pt, {G.data(), k}) / f.value;
      return s;
    }
    const Jet1 f1 = f.truncate();
    for (std::size_t i = 0; i < k; ++i) F[i] = -(Xf[i] / f1);
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      F[i] = F_[i].jet1(x);
      s.F[i] = F[i].value;
    }
    if (quadratic()) {
      std::array<Jet1, kMaxDim> G{};
      double norm2 = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        G[i] = V * F[i];
        norm2 += F[i].value * F[i].value;
      }
      s.W = divergence(pt, {G.data(), k}) - V.value * norm2;
      return s;
    }
  }
  s.W = lp_weight(pt, V, {F.data(), k}, p_);
  return s;
}

std::optional<double> WeightEvaluator::closed_form(const FramePoint& pt) const {
  if (!closed_) return std::nullopt;
  return closed_->value(pt.point());
}

std::optional<double> WeightEvaluator::target(const FramePoint& pt) const {
  if (!target_) return std::nullopt;
  return target_->value(pt.point());
}

double derive_weight_field(const WeightProblem& prob, const FramePoint& pt) {
  if (!std::holds_alternative<Field>(prob.source)) throw ConfigError("derive_weight_field needs a field source");
  if (prob.p != 2.0) throw ConfigError("derive_weight_field needs p = 2");
  return WeightEvaluator(prob)(pt).W;
}

double derive_weight_potential(const WeightProblem& prob, const FramePoint& pt) {
  if (!std::holds_alternative<Potential>(prob.source))
    throw ConfigError("derive_weight_potential needs a potential source");
  if (prob.p != 2.0) throw ConfigError("derive_weight_potential needs p = 2");
  return WeightEvaluator(prob)(pt).W;
}

double derive_weight_lp(const WeightProblem& prob, const FramePoint& pt) {
  if (!(prob.p > 1.0)) throw ConfigError("exponent p must exceed 1");
  // Always the L^p route, also at p = 2, so it can be compared with the others.
  const auto x = pt.point();
  const std::size_t k = pt.frame;
  const Jet1 V = prob.ctx.compile(prob.V, prob.params).jet1(x);
  if (!(V.value > 0.0)) throw DomainError("V is not positive at " + where(pt));
  std::array<Jet1, kMaxDim> F{};
  if (const auto* pot = std::get_if<Potential>(&prob.source)) {
    const Jet2 f = prob.ctx.compile(pot->f, prob.params).jet2(x);
    if (!(f.value > 0.0)) throw DomainError("f is not positive at " + where(pt));
    const Jet1 f1 = f.truncate();
    for (std::size_t i = 0; i < k; ++i) F[i] = -(frame_derivative(pt, f, i) / f1);
  } else {
    const auto& comps = std::get<Field>(prob.source).F.components;
    if (comps.size() != k) throw ConfigError("field component count does not match the frame");
    for (std::size_t i = 0; i < k; ++i) F[i] = prob.ctx.compile(comps[i], prob.params).jet1(x);
  }
  return lp_weight(pt, V, {F.data(), k}, prob.p);
}

// ---------------------------------------------------------------------------

void PoleConfiguration::validate() const {
  if (n < 3) throw ConfigError("multipolar configurations need n >= 3");
  if (poles.empty() || poles.size() != coefficients.size())
    throw ConfigError("need one coefficient per pole");
  for (const auto& a : poles)
    if (a.size() != static_cast<std::size_t>(n)) throw ConfigError("pole has wrong dimension");
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (poles[i] == poles[j]) throw ConfigError("poles must be pairwise distinct");
  double sum = 0.0;
  for (double c : coefficients) {
    if (!(c > 0.0)) throw ConfigError("pole coefficients must be positive");
    sum += c;
  }
  const double target = regime == PoleRegime::Lambda ? (n - 2.0) * (n - 2.0) / 4.0 : n - 2.0;
  if (std::abs(sum - target) > 1e-12)
    throw ConfigError("pole coefficients sum to " + std::to_string(sum) + ", expected " + std::to_string(target));
}

std::vector<double> PoleConfiguration::alphas() const {
  std::vector<double> a = coefficients;
  if (regime == PoleRegime::Lambda)
    for (double& v : a) v = 2.0 * v / (n - 2.0);
  return a;
}

namespace {

ScalarField offset(int j, double a) {
  const ScalarField x = ScalarField::identifier("x" + std::to_string(j + 1));
  return a == 0.0 ? x : x - ScalarField::constant(a);
}

ScalarField squared_distance(const std::vector<double>& a) {
  ScalarField s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const ScalarField d = offset(static_cast<int>(j), a[j]);
    s = j == 0 ? d * d : s + d * d;
  }
  return s;
}

}  // namespace

VectorFieldExpr multipolar_field(const PoleConfiguration& cfg) {
  cfg.validate();
  const auto alpha = cfg.alphas();
  std::vector<ScalarField> r2;
  for (const auto& a : cfg.poles) r2.push_back(squared_distance(a));
  VectorFieldExpr F;
  for (int j = 0; j < cfg.n; ++j) {
    ScalarField c;
    for (std::size_t i = 0; i < cfg.poles.size(); ++i) {
      const ScalarField term = ScalarField::constant(alpha[i]) * offset(j, cfg.poles[i][j]) / r2[i];
      c = i == 0 ? term : c + term;
    }
    F.components.push_back(c);
  }
  return F;
}

ScalarField multipolar_closed_form(const PoleConfiguration& cfg) {
  cfg.validate();
  const std::size_t m = cfg.poles.size();
  std::vector<ScalarField> r2;
  for (const auto& a : cfg.poles) r2.push_back(squared_distance(a));
  const double scale = cfg.regime == PoleRegime::Lambda ? 4.0 / ((cfg.n - 2.0) * (cfg.n - 2.0)) : 1.0;
  ScalarField W = ScalarField::constant(0.0);
  if (cfg.regime == PoleRegime::Lambda)
    for (std::size_t i = 0; i < m; ++i) W = W + ScalarField::constant(cfg.coefficients[i]) / r2[i];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double d2 = 0.0;
      for (int l = 0; l < cfg.n; ++l) d2 += (cfg.poles[i][l] - cfg.poles[j][l]) * (cfg.poles[i][l] - cfg.poles[j][l]);
      W = W + ScalarField::constant(scale * cfg.coefficients[i] * cfg.coefficients[j] * d2) / (r2[i] * r2[j]);
    }
  return W;
}

}  // namespace hardy
