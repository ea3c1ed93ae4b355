// SPDX-License-Identifier: Apache-2.0
#include "hardy/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "hardy/error.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// One-variable expressions accept r, t or x as the variable.
CompiledField compile_1d(const ScalarField& f, const std::string& var) {
  std::map<std::string, ScalarField, std::less<>> alias;
  for (const char* a : {"r", "t", "x", "x1"})
    if (var != a) alias.emplace(a, ScalarField::identifier(var));
  const std::vector<std::string> coords{var};
  return CompiledField(f.substitute(alias), coords);
}

double eval_1d(const CompiledField& f, double x) { return f.value({&x, 1}); }

// (P y')' + c K y = 0 with P = r^{n-1} V, K = r^{n-1} W.
struct BesselCoefficients {
  CompiledField V, W;
  int n;

  double P(double r) const {
    const double v = eval_1d(V, r);
    if (!(v > 0.0)) throw DomainError("V must be positive on (0, 1); V(" + fmt(r) + ") = " + fmt(v));
    return std::pow(r, n - 1) * v;
  }
  double K(double r) const { return std::pow(r, n - 1) * eval_1d(W, r); }
  // Coefficient of the Liouville normal form y_ss + c P K y = 0.
  double liouville(double r) const { return P(r) * K(r); }
};

BesselCoefficients coefficients(const BesselProblem& prob) {
  if (prob.n < 1) throw ConfigError("dimension n must be >= 1");
  if (!(prob.r_start > 0.0 && prob.r_start < 0.5)) throw ConfigError("r_start must lie in (0, 0.5)");
  return {compile_1d(prob.V, "r"), compile_1d(prob.W, "r"), prob.n};
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
}

double discriminant(double c, double kappa) { return 1.0 - 4.0 * c * kappa; }

}  // namespace

EndpointData bessel_endpoint(const BesselProblem& prob, int endpoint) {
  const BesselCoefficients co = coefficients(prob);
  const double eps = prob.r_start;
  EndpointData out;
  if (endpoint == 0) {
    // s-length of [eps, 1] and of [eps^2, 1]; the difference estimates the
    // tail [0, eps] when ds/dr is integrable at 0.
    const auto inv = [&](double x) {
      const double r = std::exp(x);
      return r / co.P(r);
    };
    const double I1 = integrate(inv, std::log(eps), 0.0);
    const double I2 = integrate(inv, 2.0 * std::log(eps), 0.0);
    out.infinite = I2 - I1 >= 0.5 * I1;
    out.distance = out.infinite ? I1 : I2 - I1;
    out.kappa = out.distance * out.distance * co.liouville(eps);
  } else {
    // Integrate in u = 1 - r so that the endpoints are exact.
    const auto inv = [&](double u) { return 1.0 / co.P(1.0 - u); };
    out.distance = integrate(inv, 0.0, eps);
    out.infinite = false;
    out.kappa = out.distance * out.distance * co.liouville(1.0 - eps);
  }
  if (!std::isfinite(out.kappa)) throw NumericalError("endpoint analysis at r = " + fmt(endpoint ? 1.0 - eps : eps) + " is not finite");
  return out;
}

BesselVerdict bessel_shoot(const BesselProblem& prob) {
  if (!(prob.c >= 0.0)) throw ConfigError("c must be >= 0");
  const BesselCoefficients co = coefficients(prob);
  const double eps = prob.r_start;
  const EndpointData e0 = bessel_endpoint(prob, 0);
  const EndpointData e1 = bessel_endpoint(prob, 1);
  const double d0 = discriminant(prob.c, e0.kappa);
  const double d1 = discriminant(prob.c, e1.kappa);
  BesselVerdict verdict;
  if (d0 < 0.0) {
    // Complex exponents: every solution oscillates as r -> 0.
    verdict.positive = false;
    verdict.r_star = eps;
    verdict.oscillatory_endpoint = true;
    return verdict;
  }

  // Recessive branch |s|^tau with the smaller exponent. At a regular
  // endpoint (tau ~ 0) use y = 1, P y' = -c int_0^eps K instead.
  const double tau = 0.5 * (1.0 - std::sqrt(d0));
  using State = std::array<double, 2>;  // y, P y'
  State y{1.0, (e0.infinite ? -tau : tau) / e0.distance};
  if (tau < 1e-8) {
    const auto k = [&](double x) {
      const double r = std::exp(x);
      return r * co.K(r);
    };
    y[1] = -prob.c * integrate(k, 2.0 * std::log(eps), std::log(eps));
  }
  const double c = prob.c;
  const auto rhs = [&](const State& s, State& ds, double x) {
    const double r = std::exp(x);
    ds[0] = r * s[1] / co.P(r);
    ds[1] = -c * r * co.K(r) * s[0];
  };

  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_dense_output(1e-15, prob.rel_tol, ode::runge_kutta_dopri5<State>());
  const double x0 = std::log(eps), x1 = std::log1p(-eps);
  stepper.initialize(y, x0, 1e-3);
  std::size_t steps = 0;
  while (stepper.current_time() < x1) {
    const auto [ta, tb] = stepper.do_step(rhs);
    if (++steps > 2'000'000) throw NumericalError("shooting exceeded the step budget near r = " + fmt(std::exp(tb)));
    const State& cur = stepper.current_state();
    if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]))
      throw NumericalError("shooting produced a non-finite state near r = " + fmt(std::exp(tb)));
    if (tb - ta < 1e-13 * std::max(1.0, std::abs(ta)))
      throw NumericalError("integrator step underflow near r = " + fmt(std::exp(ta)));
    const double te = std::min(tb, x1);
    State end = cur;
    if (te < tb) stepper.calc_state(te, end);
    const double ya = stepper.previous_state()[0];
    if (ya > 0.0 && end[0] <= 0.0) {
      // Polish the crossing on the interpolant.
      double lo = ta, hi = te;
      State tmp;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        stepper.calc_state(mid, tmp);
        (tmp[0] > 0.0 ? lo : hi) = mid;
      }
      verdict.positive = false;
      verdict.r_star = std::exp(0.5 * (lo + hi));
      return verdict;
    }
  }
  if (d1 < 0.0) {
    verdict.positive = false;
    verdict.r_star = 1.0;
    verdict.oscillatory_endpoint = true;
  }
  return verdict;
}

BesselThreshold bessel_threshold(BesselProblem prob, double c_lo, double c_hi, double tol) {
  if (!(c_lo >= 0.0 && c_hi > c_lo)) throw ConfigError("invalid bracket [" + fmt(c_lo) + ", " + fmt(c_hi) + "]");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  prob.c = c_lo;
  if (!bessel_shoot(prob).positive)
    throw ConfigError("invalid bracket: the solution already vanishes at c = " + fmt(c_lo));
  prob.c = c_hi;
  BesselVerdict hi_v = bessel_shoot(prob);
  if (hi_v.positive) throw ConfigError("invalid bracket: the solution stays positive at c = " + fmt(c_hi));

  BesselThreshold out{0.0, c_lo, c_hi, 0};
  while (out.hi - out.lo > tol) {
    prob.c = 0.5 * (out.lo + out.hi);
    const BesselVerdict v = bessel_shoot(prob);
    ++out.iterations;
    if (v.positive) {
      out.lo = prob.c;
    } else {
      // Zeros move toward 0 as c grows, so lowering c cannot move r* left.
      if (v.r_star < hi_v.r_star * (1.0 - 1e-6))
        throw NumericalError("non-monotone verdicts: r* = " + fmt(v.r_star) + " at c = " + fmt(prob.c) +
                             " but r* = " + fmt(hi_v.r_star) + " at c = " + fmt(out.hi));
      out.hi = prob.c;
      hi_v = v;
    }
  }
  out.value = 0.5 * (out.lo + out.hi);
  return out;
}

// ---------------------------------------------------------------------------

Boundary parse_boundary(std::string_view s) {
  if (s == "d" || s == "dirichlet") return Boundary::Dirichlet;
  if (s == "n" || s == "natural") return Boundary::Natural;
  throw ConfigError("boundary condition must be d or n, got '" + std::string(s) + "'");
}

bool SturmLiouvilleResult::monotone() const {
  if (ladder.size() < 3) return true;
  return std::abs(ladder[1] - ladder[2]) <= std::abs(ladder[0] - ladder[1]);
}

double sl_eigenvalue(const SturmLiouvilleProblem& prob, int mesh, std::vector<double>* nodes,
                     std::vector<double>* vector) {
  if (mesh < 64) throw ConfigError("mesh must have at least 64 intervals");
  if (!(prob.b > prob.a)) throw ConfigError("interval must satisfy a < b");
  const CompiledField P = compile_1d(prob.P, "t"), Q = compile_1d(prob.Q, "t"), R = compile_1d(prob.R, "t");
  const int N = mesh;
  const double h = (prob.b - prob.a) / N;
  const auto node = [&](double i) { return prob.a + i * h; };

  // Linear elements: stiffness with P at the two-point Gauss nodes, Q and R
  // lumped on the dual cells with the midpoint rule on each half cell.
  std::vector<double> diag(N + 1, 0.0), off(N, 0.0), mass(N + 1, 0.0);
  const double g = 0.5 / std::sqrt(3.0);
  for (int e = 0; e < N; ++e) {
    const double pe = 0.5 * (eval_1d(P, node(e + 0.5 - g)) + eval_1d(P, node(e + 0.5 + g)));
    if (!(pe > 0.0)) throw DomainError("P must be positive on (a, b); element at t = " + fmt(node(e + 0.5)));
    diag[e] += pe / h;
    diag[e + 1] += pe / h;
    off[e] = -pe / h;
    for (const auto& [i, t] : {std::pair{e, e + 0.25}, std::pair{e + 1, e + 0.75}}) {
      diag[i] += 0.5 * h * eval_1d(Q, node(t));
      mass[i] += 0.5 * h * eval_1d(R, node(t));
    }
  }
  const int first = prob.left == Boundary::Dirichlet ? 1 : 0;
  const int last = prob.right == Boundary::Dirichlet ? N - 1 : N;
  const int m = last - first + 1;

  // Symmetric form M^{-1/2} A M^{-1/2}.
  std::vector<double> d(m), o(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) {
    const double mi = mass[first + i];
    if (!(mi > 0.0)) throw DomainError("R must be positive on (a, b); node t = " + fmt(node(first + i)));
    d[i] = diag[first + i] / mi;
    if (i + 1 < m) o[i] = off[first + i] / std::sqrt(mi * mass[first + i + 1]);
  }
  for (double v : d)
    if (!std::isfinite(v)) throw NumericalError("non-finite Sturm-Liouville coefficients");

  // Sturm counts locate the smallest eigenvalue; inverse iteration with a
  // shift just below it polishes value and vector.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < m; ++i) {
    const double rad = (i > 0 ? std::abs(o[i - 1]) : 0.0) + (i + 1 < m ? std::abs(o[i]) : 0.0);
    lo = std::min(lo, d[i] - rad);
    hi = std::max(hi, d[i] + rad);
  }
  const auto below = [&](double x) {
    int count = 0;
    double piv = 1.0;
    for (int i = 0; i < m; ++i) {
      piv = d[i] - x - (i > 0 ? o[i - 1] * o[i - 1] / piv : 0.0);
      if (piv == 0.0) piv = -1e-300;
      if (piv < 0.0) ++count;
    }
    return count;
  };
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) >= 1 ? hi : lo) = mid;
  }
  const double sigma = lo - 1e-9 * std::max(1.0, std::abs(lo));

  // LDL^T of the shifted tridiagonal.
  std::vector<double> D(m), L(std::max(m - 1, 0));
  D[0] = d[0] - sigma;
  for (int i = 1; i < m; ++i) {
    L[i - 1] = o[i - 1] / D[i - 1];
    D[i] = d[i] - sigma - L[i - 1] * o[i - 1];
    if (!(D[i] > 0.0)) throw NumericalError("shifted Sturm-Liouville matrix is not positive definite");
  }
  const auto solve = [&](std::vector<double>& x) {
    for (int i = 1; i < m; ++i) x[i] -= L[i - 1] * x[i - 1];
    for (int i = 0; i < m; ++i) x[i] /= D[i];
    for (int i = m - 2; i >= 0; --i) x[i] -= L[i] * x[i + 1];
  };
  const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < m; ++i) {
      y[i] = d[i] * x[i];
      if (i > 0) y[i] += o[i - 1] * x[i - 1];
      if (i + 1 < m) y[i] += o[i] * x[i + 1];
    }
  };

  std::vector<double> v(m, 1.0), w(m);
  double lambda = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  for (int it = 0; it < prob.max_iterations; ++it) {
    solve(v);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    apply(v, w);
    double rq = 0.0, res = 0.0;
    for (int i = 0; i < m; ++i) rq += v[i] * w[i];
    for (int i = 0; i < m; ++i) res += (w[i] - rq * v[i]) * (w[i] - rq * v[i]);
    const bool small = std::sqrt(res) <= 1e-9 * std::max(1.0, std::abs(rq));
    if (small && std::abs(rq - lambda) <= 1e-14 * std::max(1.0, std::abs(rq))) {
      lambda = rq;
      converged = true;
      break;
    }
    lambda = rq;
  }
  if (!converged)
    throw NumericalError("inverse iteration did not converge after " + std::to_string(prob.max_iterations) +
                         " iterations");

  if (nodes || vector) {
    std::vector<double> t(N + 1), y(N + 1, 0.0);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += v[i];
    const double sgn = sum < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i <= N; ++i) t[i] = node(i);
    for (int i = 0; i < m; ++i) y[first + i] = sgn * v[i] / std::sqrt(mass[first + i]);
    if (nodes) *nodes = std::move(t);
    if (vector) *vector = std::move(y);
  }
  return lambda;
}

SturmLiouvilleResult sl_min(const SturmLiouvilleProblem& prob) {
  SturmLiouvilleResult out;
  for (int k = 0; k < 3; ++k) {
    const int mesh = prob.mesh << k;
    out.meshes.push_back(mesh);
    if (k == 1)
      out.ladder.push_back(sl_eigenvalue(prob, mesh, &out.nodes, &out.eigenvector));
    else
      out.ladder.push_back(sl_eigenvalue(prob, mesh));
  }
  out.lambda = out.ladder[1];
  return out;
}

double sl_quotient(const SturmLiouvilleProblem& prob, const std::vector<double>& nodes,
                   const std::vector<double>& values) {
  if (nodes.size() != values.size() || nodes.size() < 2) throw ConfigError("nodes and values must match in size");
  const CompiledField P = compile_1d(prob.P, "t"), Q = compile_1d(prob.Q, "t"), R = compile_1d(prob.R, "t");
  std::vector<double> gx, gw;
  gauss_legendre(4, gx, gw);
  CompensatedSum num, den;
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double a = nodes[e], b = nodes[e + 1];
    if (!(b > a)) throw ConfigError("nodes must be increasing");
    const double slope = (values[e + 1] - values[e]) / (b - a);
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double s = 0.5 * (gx[q] + 1.0);
      const double t = a + s * (b - a), y = values[e] + s * (values[e + 1] - values[e]);
      const double w = 0.5 * gw[q] * (b - a);
      num.add(w * (eval_1d(P, t) * slope * slope + eval_1d(Q, t) * y * y));
      den.add(w * eval_1d(R, t) * y * y);
    }
  }
  if (!(den.value() > 1e-14)) throw NumericalError("degenerate trial: denominator below 1e-14");
  return num.value() / den.value();
}

// ---------------------------------------------------------------------------

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr std::array<std::uint64_t, kMaxDim> kPrimes{2, 3, 5, 7, 11, 13};

}  // namespace

CertifyResult certify_lower_bound(const WeightProblem& prob, const CertifyOptions& opts) {
  if (!prob.target_W) throw ConfigError("certify_lower_bound needs a target weight");
  const WeightEvaluator eval(prob);
  const GeometryContext& ctx = eval.context();
  const std::size_t m = ctx.ambient_dim();
  if (opts.box.dim() != m) throw ConfigError("certification box dimension does not match the context");

  std::vector<std::vector<double>> points;
  for (std::size_t i = 1; i <= opts.samples; ++i) {
    std::vector<double> x(m);
    for (std::size_t a = 0; a < m; ++a) {
      const auto [lo, hi] = opts.box.axes[a];
      x[a] = lo + (hi - lo) * radical_inverse(i, kPrimes[a]);
    }
    points.push_back(std::move(x));
  }
  if (opts.ladder) {
    // Rays along each axis, the diagonal and a few quasi-random directions.
    std::vector<std::vector<double>> dirs;
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<double> e(m, 0.0);
      e[a] = 1.0;
      dirs.push_back(e);
    }
    dirs.emplace_back(m, 1.0 / std::sqrt(static_cast<double>(m)));
    for (std::uint64_t k = 1; k <= 4; ++k) {
      std::vector<double> u(m);
      double nrm = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        u[a] = 2.0 * radical_inverse(k + 7, kPrimes[a]) - 1.0 + 0.1;
        nrm += u[a] * u[a];
      }
      for (double& c : u) c /= std::sqrt(nrm);
      dirs.push_back(std::move(u));
    }
    const double l0 = std::log(opts.ladder_min), l1 = std::log(opts.ladder_max);
    for (const auto& u : dirs)
      for (int j = 0; j < opts.ladder_points; ++j) {
        const double lam = std::exp(l0 + (l1 - l0) * j / std::max(1, opts.ladder_points - 1));
        std::vector<double> x(m);
        for (std::size_t a = 0; a < m; ++a) x[a] = lam * u[a];
        points.push_back(std::move(x));
      }
  }

  CertifyResult out;
  out.lower = std::numeric_limits<double>::infinity();
  out.upper_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& x : points) {
    if (!ctx.in_domain(x)) continue;
    const FramePoint pt = ctx.at(x);
    const double W = eval(pt).W;
    const double T = *eval.target(pt);
    if (!(T > 0.0) || !std::isfinite(T)) {
      std::ostringstream os;
      os.precision(17);
      os << "target weight must be positive; target = " << T << " at (";
      for (std::size_t a = 0; a < m; ++a) os << (a ? ", " : "") << x[a];
      os << ")";
      throw DomainError(os.str());
    }
    const double ratio = W / T;
    if (!std::isfinite(ratio)) throw NumericalError("non-finite weight ratio");
    ++out.samples;
    if (ratio < out.lower) {
      out.lower = ratio;
      out.argmin = x;
    }
    out.upper_ratio = std::max(out.upper_ratio, ratio);
  }
  if (out.samples == 0) throw ConfigError("no certification sample lies in the domain");
  return out;
}

namespace {

double edge_fn(double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; }

// Smooth step from 0 (z <= 0) to 1 (z >= 1) and its derivative.
std::pair<double, double> smooth_step(double z) {
  if (z <= 0.0) return {0.0, 0.0};
  if (z >= 1.0) return {1.0, 0.0};
  const double p = edge_fn(z), q = edge_fn(1.0 - z);
  const double dp = p / (z * z), dq = q / ((1.0 - z) * (1.0 - z));
  const double s = p + q;
  return {p / s, (dp * q + p * dq) / (s * s)};
}

double& member(RadialTrial& t, TrialParameter::Which w) {
  switch (w) {
    case TrialParameter::A: return t.a;
    case TrialParameter::B: return t.b;
    case TrialParameter::LogRIn: return t.log_r_in;
    case TrialParameter::LogROut: return t.log_r_out;
    case TrialParameter::Width: return t.width;
  }
  return t.a;
}

}  // namespace

double radial_quotient(const WeightProblem& prob, const RadialTrial& trial, int nodes_per_unit) {
  const GeometryContext& ctx = prob.ctx;
  if (ctx.kind() != GeometryKind::Euclidean && ctx.kind() != GeometryKind::EuclideanRadial)
    throw ConfigError("radial trial functions need a Euclidean context");
  if (!prob.target_W) throw ConfigError("trial_upper_bound needs a target weight");
  if (!(trial.width > 0.0) || !(trial.log_r_out - trial.log_r_in > 2.0 * trial.width))
    throw ConfigError("trial cutoff must satisfy log_r_out - log_r_in > 2 width > 0");
  const int n = static_cast<int>(ctx.ambient_dim());
  const CompiledField V = ctx.compile(prob.V, prob.params);
  const CompiledField T = ctx.compile(*prob.target_W, prob.params);
  std::vector<double> x(n, 0.0);

  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  const double xi = trial.log_r_in, xo = trial.log_r_out, w = trial.width;
  const int panels = std::max(8, static_cast<int>(std::ceil((xo - xi) * nodes_per_unit / 16.0)));
  const double hp = (xo - xi) / panels;
  CompensatedSum num, den;
  for (int k = 0; k < panels; ++k)
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double s = xi + hp * (k + 0.5 * (gx[q] + 1.0));
      const double wq = 0.5 * hp * gw[q];
      const double r = std::exp(s);
      const auto [c1, d1] = smooth_step((s - xi) / w);
      const auto [c2, d2] = smooth_step((xo - s) / w);
      const double chi = c1 * c2, dchi = (d1 * c2 - c1 * d2) / w;
      if (chi == 0.0 && dchi == 0.0) continue;
      const double base = std::pow(r, trial.a) * std::pow(1.0 + r * r, trial.b);
      const double g = trial.a + 2.0 * trial.b * r * r / (1.0 + r * r);
      const double u = base * chi, ux = base * (g * chi + dchi);  // du / d(log r)
      x[0] = r;
      const double rn = std::pow(r, n);
      num.add(wq * V.value(x) * ux * ux * rn / (r * r));
      den.add(wq * T.value(x) * u * u * rn);
    }
  if (!(den.value() > 1e-14)) throw NumericalError("degenerate trial: denominator below 1e-14");
  const double qv = num.value() / den.value();
  if (!std::isfinite(qv)) throw NumericalError("non-finite Rayleigh quotient");
  return qv;
}

TrialResult trial_upper_bound(const WeightProblem& prob, RadialTrial start, const std::vector<TrialParameter>& free,
                              int sweeps) {
  if (free.size() > 3) throw ConfigError("at most three trial parameters may be optimized");
  TrialResult out;
  out.best = start;
  out.quotient = radial_quotient(prob, start);
  out.evaluations = 1;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int sweep = 0; sweep < sweeps; ++sweep)
    for (const auto& par : free) {
      if (!(par.hi > par.lo)) throw ConfigError("trial parameter range must be non-empty");
      RadialTrial t = out.best;
      const auto f = [&](double v) {
        member(t, par.which) = v;
        ++out.evaluations;
        try {
          return radial_quotient(prob, t);
        } catch (const ConfigError&) {
          return std::numeric_limits<double>::infinity();  // infeasible cutoff
        }
      };
      double a = par.lo, b = par.hi;
      double c = b - phi * (b - a), d = a + phi * (b - a);
      double fc = f(c), fd = f(d);
      for (int it = 0; it < 40; ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - phi * (b - a);
          fc = f(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + phi * (b - a);
          fd = f(d);
        }
      }
      const double v = fc < fd ? c : d;
      const double fv = std::min(fc, fd);
      if (fv < out.quotient) {
        out.quotient = fv;
        member(out.best, par.which) = v;
      }
    }
  return out;
}

}  // namespace hardy
