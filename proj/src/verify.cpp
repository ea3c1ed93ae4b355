// SPDX-License-Identifier: Apache-2.0
#include "hardy/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

namespace {

// Per-axis bump factors of one test function tabulated on the grid nodes.
struct BumpTable {
  const TestFunction* u = nullptr;
  bool tabulated = false;
  std::vector<std::vector<double>> s, b, db;  // db = b'(s) / b(s) / half

  BumpTable(const TestFunction& fn, const QuadratureGrid& grid) : u(&fn) {
    if (!(fn.support() == grid.box())) return;
    tabulated = true;
    for (std::size_t a = 0; a < grid.dim(); ++a) {
      const auto nodes = grid.axis_nodes(a);
      std::vector<double> sa, ba, da;
      for (double x : nodes) {
        const double sv = (x - fn.centers()[a]) / fn.half_widths()[a];
        const auto bb = TestFunction::bump(sv);
        sa.push_back(sv);
        ba.push_back(bb[0]);
        da.push_back(bb[0] > 0.0 ? bb[1] / bb[0] / fn.half_widths()[a] : 0.0);
      }
      s.push_back(std::move(sa));
      b.push_back(std::move(ba));
      db.push_back(std::move(da));
    }
  }

  Jet1 operator()(std::span<const double> x, std::span<const std::size_t> index) const {
    if (!tabulated) return u->jet1(x);
    const std::size_t d = x.size();
    double prod = u->scale();
    std::array<double, kMaxDim> sv{};
    for (std::size_t a = 0; a < d; ++a) {
      prod *= b[a][index[a]];
      sv[a] = s[a][index[a]];
    }
    if (prod == 0.0) return Jet1::constant(0.0, d);
    const Jet1 m = u->modulation({sv.data(), d});
    Jet1 out = Jet1::constant(prod * m.value, d);
    for (std::size_t a = 0; a < d; ++a)
      out.grad[a] = prod * (m.grad[a] / u->half_widths()[a] + m.value * db[a][index[a]]);
    return out;
  }
};

void frame_apply(const FramePoint& pt, const Jet1& u, FrameVector& out) {
  for (std::size_t i = 0; i < pt.frame; ++i) {
    double v = 0.0;
    for (std::size_t l = 0; l < pt.ambient; ++l) v += pt.coefficient[i][l].value * u.grad[l];
    out[i] = v;
  }
}

struct Accumulator {
  CompensatedSum lhs, weight, rem, alt;
  double min_r = std::numeric_limits<double>::infinity();
};

void check_finite(double v, const char* what, std::span<const double> x) {
  if (std::isfinite(v)) return;
  std::ostringstream os;
  os.precision(17);
  os << "non-finite " << what << " at node (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  throw NumericalError(os.str());
}

}  // namespace

std::vector<IdentityValues> integrate_identity(const WeightEvaluator& eval, std::span<const TestFunction> bumps,
                                               const QuadratureGrid& grid) {
  const GeometryContext& ctx = eval.context();
  if (grid.dim() != ctx.ambient_dim()) throw ConfigError("grid dimension does not match the context");
  std::vector<BumpTable> tables;
  for (const auto& u : bumps) {
    if (u.dim() != grid.dim()) throw ConfigError("test function dimension does not match the grid");
    tables.emplace_back(u, grid);
  }
  const double p = eval.p();
  const bool quadratic = eval.quadratic();
  const bool alt = quadratic && eval.is_potential() && eval.unit_V();
  std::vector<Accumulator> acc(bumps.size());
  std::vector<Jet1> us(bumps.size());

  grid.for_each([&](std::span<const double> x, double w, std::span<const std::size_t> index) {
    bool any = false;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      us[k] = tables[k](x, index);
      any = any || us[k].value != 0.0;
    }
    if (!any) return;
    const FramePoint pt = ctx.at(x);
    const WeightSample ws = eval(pt);
    const double dg = w * pt.density;
    const std::size_t kf = pt.frame;
    const double F2 = squared_norm(ws.F, kf);
    const double Fn = std::sqrt(F2);
    for (std::size_t k = 0; k < tables.size(); ++k) {
      const Jet1& u = us[k];
      if (u.value == 0.0) {
        bool flat = true;
        for (std::size_t l = 0; l < pt.ambient; ++l) flat = flat && u.grad[l] == 0.0;
        if (flat) continue;
      }
      FrameVector gu{};
      frame_apply(pt, u, gu);
      const double G2 = squared_norm(gu, kf);
      Accumulator& a = acc[k];
      if (quadratic) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < kf; ++i) {
          const double v = gu[i] + u.value * ws.F[i];
          r2 += v * v;
        }
        const double l = dg * ws.V * G2, wt = dg * ws.W * u.value * u.value, rm = dg * ws.V * r2;
        check_finite(l + wt + rm, "identity integrand", x);
        a.lhs.add(l);
        a.weight.add(wt);
        a.rem.add(rm);
        if (alt) {
          double q2 = 0.0;
          for (std::size_t i = 0; i < kf; ++i) {
            const double q = (gu[i] * ws.f - u.value * ws.grad_f[i]) / (ws.f * ws.f);
            q2 += q * q;
          }
          a.alt.add(dg * ws.f * ws.f * q2);
        }
      } else {
        const double au = std::abs(u.value);
        const double gn = std::sqrt(G2);
        const double gp = std::pow(gn, p);
        const double up = std::pow(au, p);
        double R = (p - 1.0) * std::pow(Fn, p) * up + gp;
        if (Fn > 0.0 && au > 0.0) {
          double dot = 0.0;
          for (std::size_t i = 0; i < kf; ++i) dot += ws.F[i] * gu[i];
          R += p * std::pow(Fn, p - 2.0) * std::pow(au, p - 2.0) * u.value * dot;
        }
        const double l = dg * ws.V * gp, wt = dg * ws.W * up, rm = dg * ws.V * R;
        check_finite(l + wt + rm, "identity integrand", x);
        a.min_r = std::min(a.min_r, R);
        a.lhs.add(l);
        a.weight.add(wt);
        a.rem.add(rm);
      }
    }
  });

  std::vector<IdentityValues> out;
  for (const auto& a : acc) {
    IdentityValues v;
    v.nodes = grid.nodes_per_axis();
    v.lhs = a.lhs.value();
    v.weight_term = a.weight.value();
    v.remainder_term = a.rem.value();
    if (alt) v.remainder_alt = a.alt.value();
    v.residual = v.lhs - v.weight_term - v.remainder_term;
    v.relative_residual = std::abs(v.residual) / std::max(std::abs(v.lhs), 1e-300);
    v.margin = v.lhs - v.weight_term;
    v.min_pointwise = a.min_r;
    out.push_back(v);
  }
  return out;
}

std::optional<double> IdentityReport::remainder_form_gap() const {
  const auto& f = fine();
  if (!f.remainder_alt) return std::nullopt;
  return std::abs(*f.remainder_alt - f.remainder_term) / std::max(std::abs(f.remainder_term), 1e-300);
}

bool IdentityReport::passes(double tol) const {
  for (const auto& v : resolutions) {
    if (!(v.relative_residual <= tol)) return false;
    if (!(v.remainder_term >= kRemainderFloor)) return false;
    if (!(v.margin >= kRemainderFloor)) return false;
    if (!(v.min_pointwise >= kPointwiseFloor)) return false;
  }
  if (!(fine().relative_residual <= std::max(10.0 * coarse().relative_residual, 1e-13))) return false;
  return true;
}

namespace {

std::vector<IdentityReport> identity_reports(const WeightProblem& prob, std::span<const TestFunction> bumps,
                                             const QuadratureGrid& grid, bool general_p) {
  const WeightEvaluator eval(prob, general_p);
  const QuadratureGrid fine(grid.box(), 2 * grid.nodes_per_axis());
  const auto a = integrate_identity(eval, bumps, grid);
  const auto b = integrate_identity(eval, bumps, fine);
  std::vector<IdentityReport> out;
  for (std::size_t k = 0; k < bumps.size(); ++k) {
    IdentityReport r;
    r.seed = bumps[k].seed();
    r.p = prob.p;
    r.resolutions = {a[k], b[k]};
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<IdentityReport> check_identity_batch(const WeightProblem& prob, std::span<const TestFunction> bumps,
                                                 const QuadratureGrid& grid) {
  return identity_reports(prob, bumps, grid, false);
}

IdentityReport check_identity(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid) {
  if (prob.p != 2.0) throw ConfigError("check_identity needs p = 2; use check_identity_lp");
  return check_identity_batch(prob, {&u, 1}, grid).front();
}

IdentityReport check_identity_lp(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid) {
  if (!(prob.p > 1.0)) throw ConfigError("exponent p must exceed 1");
  // General-p formulas throughout, p = 2 included.
  IdentityReport r = identity_reports(prob, {&u, 1}, grid, true).front();
  for (const auto& v : r.resolutions)
    if (v.min_pointwise < kPointwiseFloor)
      throw NumericalError("pointwise remainder R = " + std::to_string(v.min_pointwise) +
                           " is negative; the L^p identity is violated");
  return r;
}

InequalityReport check_inequality(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid,
                                  double c) {
  const WeightEvaluator eval(prob);
  const GeometryContext& ctx = eval.context();
  InequalityReport rep;
  rep.constant = c;
  for (int level = 0; level < 2; ++level) {
    const QuadratureGrid g(grid.box(), grid.nodes_per_axis() << level);
    CompensatedSum lhs, rhs;
    const BumpTable table(u, g);
    const CompiledField V = ctx.compile(prob.V, prob.params);
    g.for_each([&](std::span<const double> x, double w, std::span<const std::size_t> index) {
      const Jet1 uj = table(x, index);
      if (uj.value == 0.0) return;
      const FramePoint pt = ctx.at(x);
      const double dg = w * pt.density;
      const auto target = eval.target(pt);
      if (!target) throw ConfigError("check_inequality needs a target weight");
      FrameVector gu{};
      frame_apply(pt, uj, gu);
      lhs.add(dg * V.value(x) * std::pow(squared_norm(gu, pt.frame), 0.5 * prob.p));
      rhs.add(dg * *target * std::pow(std::abs(uj.value), prob.p));
    });
    auto& v = rep.resolutions[level];
    v.nodes = g.nodes_per_axis();
    v.lhs = lhs.value();
    v.rhs = c * rhs.value();
    v.margin = v.lhs - v.rhs;
  }
  return rep;
}

AdjointnessValues check_adjointness(const GeometryContext& ctx, std::span<const CompiledField> F,
                                    const TestFunction& u, const QuadratureGrid& grid) {
  if (F.size() != ctx.frame_size()) throw ConfigError("field component count does not match the frame");
  CompensatedSum div_term, grad_term;
  const BumpTable table(u, grid);
  grid.for_each([&](std::span<const double> x, double w, std::span<const std::size_t> index) {
    const Jet1 uj = table(x, index);
    if (uj.value == 0.0) return;
    const FramePoint pt = ctx.at(x);
    const double dg = w * pt.density;
    std::array<Jet1, kMaxDim> comps{};
    for (std::size_t i = 0; i < F.size(); ++i) comps[i] = F[i].jet1(x);
    const double dv = divergence(pt, {comps.data(), F.size()});
    FrameVector gu{};
    frame_apply(pt, uj, gu);
    double dot = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) dot += comps[i].value * gu[i];
    div_term.add(dg * dv * uj.value);
    grad_term.add(dg * dot);
  });
  AdjointnessValues v;
  v.nodes = grid.nodes_per_axis();
  v.divergence_term = div_term.value();
  v.gradient_term = grad_term.value();
  v.relative_residual = std::abs(v.divergence_term + v.gradient_term) /
                        std::max({std::abs(v.divergence_term), std::abs(v.gradient_term), 1e-300});
  return v;
}

}  // namespace hardy
