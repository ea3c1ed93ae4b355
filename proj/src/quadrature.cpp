// SPDX-License-Identifier: Apache-2.0
#include "hardy/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureGrid::QuadratureGrid(Box box, int nodes_per_axis, std::size_t budget)
    : box_(std::move(box)), n_(nodes_per_axis), size_(1) {
  if (n_ < 2) throw ConfigError("nodes_per_axis must be at least 2");
  if (box_.dim() == 0 || box_.dim() > kMaxDim) throw ConfigError("grid dimension out of range");
  for (const auto& [lo, hi] : box_.axes)
    if (!(hi > lo)) throw ConfigError("degenerate quadrature box " + box_.to_string());
  for (std::size_t a = 0; a < box_.dim(); ++a) {
    if (size_ > budget / static_cast<std::size_t>(n_))
      throw ConfigError("grid of " + std::to_string(n_) + "^" + std::to_string(box_.dim()) +
                        " nodes exceeds the budget of " + std::to_string(budget));
    size_ *= static_cast<std::size_t>(n_);
  }
  std::vector<double> t, w;
  gauss_legendre(n_, t, w);
  for (const auto& [lo, hi] : box_.axes) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    std::vector<double> xs(n_), ws(n_);
    for (int i = 0; i < n_; ++i) {
      xs[i] = c + h * t[i];
      ws[i] = h * w[i];
    }
    nodes_.push_back(std::move(xs));
    weights_.push_back(std::move(ws));
  }
}

QuadratureGrid build_grid(const Box& box, int nodes_per_axis, std::size_t budget) {
  return QuadratureGrid(box, nodes_per_axis, budget);
}

double integrate(const QuadratureGrid& grid, const std::function<double(std::span<const double>)>& integrand) {
  CompensatedSum sum;
  grid.for_each([&](std::span<const double> x, double w, std::span<const std::size_t>) {
    const double v = integrand(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand value " << v << " at node (";
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
      os << ")";
      throw NumericalError(os.str());
    }
    sum.add(w * v);
  });
  return sum.value();
}

// ---------------------------------------------------------------------------

namespace {

// Portable uniform double in [-1, 1) from the raw 64-bit stream.
double uniform_pm1(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

std::array<double, 3> TestFunction::bump(double s) {
  const double q = 1.0 - s * s;
  if (!(q > 0.0)) return {0.0, 0.0, 0.0};
  const double b = std::exp(-1.0 / q);
  if (b == 0.0) return {0.0, 0.0, 0.0};
  const double g1 = -2.0 * s / (q * q);
  const double g2 = -2.0 * (1.0 + 3.0 * s * s) / (q * q * q);
  return {b, b * g1, b * (g1 * g1 + g2)};
}

TestFunction::TestFunction(Box support, std::uint64_t seed) : box_(std::move(support)), seed_(seed) {
  const std::size_t d = box_.dim();
  if (d == 0 || d > kMaxDim) throw ConfigError("test function dimension out of range");
  for (const auto& [lo, hi] : box_.axes) {
    if (!(hi > lo)) throw ConfigError("degenerate support box " + box_.to_string());
    center_.push_back(0.5 * (lo + hi));
    half_.push_back(0.5 * (hi - lo));
  }
  // Monomials of total degree 1..3 in graded order.
  std::mt19937_64 rng(seed);
  std::array<std::uint8_t, kMaxDim> e{};
  auto emit = [&](auto&& self, std::size_t axis, int remaining) -> void {
    if (axis == d) {
      int total = 0;
      for (std::size_t a = 0; a < d; ++a) total += e[a];
      if (total == 0) return;
      Monomial mono{0.0, e, static_cast<std::uint8_t>(total), {}};
      std::size_t k = 0;
      for (std::size_t a = 0; a < d; ++a)
        for (int r = 0; r < e[a]; ++r) mono.vars[k++] = static_cast<std::uint8_t>(a);
      poly_.push_back(mono);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[axis] = static_cast<std::uint8_t>(k);
      self(self, axis + 1, remaining - k);
    }
    e[axis] = 0;
  };
  emit(emit, 0, 3);
  double l1 = 0.0;
  for (auto& m : poly_) {
    m.c = uniform_pm1(rng);
    l1 += std::abs(m.c);
  }
  if (l1 > 0.0)
    for (auto& m : poly_) m.c *= 0.5 / l1;

  // max |u|: coarse sampling, then Newton on log u from the best sample.
  const int per_axis = d <= 3 ? 21 : (d == 4 ? 11 : 5);
  std::size_t total = 1;
  for (std::size_t a = 0; a < d; ++a) total *= per_axis;
  std::vector<double> x(d), best(d);
  double best_v = -1.0;
  std::vector<int> idx(d, 0);
  for (std::size_t c = 0; c < total; ++c) {
    for (std::size_t a = 0; a < d; ++a) x[a] = center_[a] + half_[a] * (-1.0 + 2.0 * (idx[a] + 0.5) / per_axis);
    const double v = value(x);
    if (v > best_v) {
      best_v = v;
      best = x;
    }
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
  }
  x = best;
  for (int iter = 0; iter < 100; ++iter) {
    const Jet2 j = jet2(x);
    Eigen::MatrixXd H(d, d);
    Eigen::VectorXd g(d);
    for (std::size_t a = 0; a < d; ++a) {
      g[a] = j.grad[a] / j.value;
      for (std::size_t b = 0; b < d; ++b)
        H(a, b) = j.hessian(a, b) / j.value - j.grad[a] * j.grad[b] / (j.value * j.value);
    }
    Eigen::VectorXd step = -H.ldlt().solve(g);
    if (!(g.dot(step) > 0.0) || !step.allFinite()) step = g * (0.01 * half_[0] * half_[0]);
    double t = 1.0;
    std::vector<double> trial(d);
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      for (std::size_t a = 0; a < d; ++a) trial[a] = x[a] + t * step[a];
      if (value(trial) >= j.value) {
        moved = true;
        break;
      }
    }
    if (!moved) break;
    double rel = 0.0;
    for (std::size_t a = 0; a < d; ++a) rel = std::max(rel, std::abs(trial[a] - x[a]) / half_[a]);
    x = trial;
    if (rel < 1e-13) break;
  }
  best_v = std::max(best_v, value(x));
  if (!(best_v > 0.0)) throw NumericalError("test function vanishes identically");
  scale_ = 1.0 / best_v;
}

Jet1 TestFunction::modulation(std::span<const double> s) const {
  const std::size_t d = dim();
  Jet1 m = Jet1::constant(1.0, d);
  for (const auto& mono : poly_) {
    const auto& v = mono.vars;
    switch (mono.degree) {
      case 1:
        m.value += mono.c * s[v[0]];
        m.grad[v[0]] += mono.c;
        break;
      case 2: {
        const double a = s[v[0]], b = s[v[1]];
        m.value += mono.c * a * b;
        m.grad[v[0]] += mono.c * b;
        m.grad[v[1]] += mono.c * a;
        break;
      }
      default: {
        const double a = s[v[0]], b = s[v[1]], c = s[v[2]];
        m.value += mono.c * a * b * c;
        m.grad[v[0]] += mono.c * b * c;
        m.grad[v[1]] += mono.c * a * c;
        m.grad[v[2]] += mono.c * a * b;
        break;
      }
    }
  }
  return m;
}

double TestFunction::value(std::span<const double> x) const {
  const std::size_t d = dim();
  std::array<double, kMaxDim> s{};
  double prod = scale_;
  for (std::size_t a = 0; a < d; ++a) {
    s[a] = (x[a] - center_[a]) / half_[a];
    prod *= bump(s[a])[0];
    if (prod == 0.0) return 0.0;
  }
  return prod * modulation({s.data(), d}).value;
}

Jet1 TestFunction::jet1(std::span<const double> x) const {
  const std::size_t d = dim();
  std::array<double, kMaxDim> s{}, b{}, db{};
  double prod = scale_;
  for (std::size_t a = 0; a < d; ++a) {
    s[a] = (x[a] - center_[a]) / half_[a];
    const auto bb = bump(s[a]);
    b[a] = bb[0];
    db[a] = bb[1] / half_[a];
    prod *= b[a];
  }
  if (prod == 0.0) return Jet1::constant(0.0, d);
  const Jet1 m = modulation({s.data(), d});
  Jet1 u = Jet1::constant(prod * m.value, d);
  for (std::size_t a = 0; a < d; ++a) u.grad[a] = prod * (m.grad[a] / half_[a] + m.value * db[a] / b[a]);
  return u;
}

Jet2 TestFunction::jet2(std::span<const double> x) const {
  const std::size_t d = dim();
  Jet2 u = Jet2::constant(scale_, d);
  std::array<Jet2, kMaxDim> s{};
  for (std::size_t a = 0; a < d; ++a) {
    s[a] = Jet2::variable((x[a] - center_[a]) / half_[a], a, d);
    s[a].grad[a] = 1.0 / half_[a];
    const auto bb = bump(s[a].value);
    if (bb[0] == 0.0) return Jet2::constant(0.0, d);
    u = u * s[a].apply(bb[0], bb[1], bb[2]);
  }
  Jet2 m = Jet2::constant(1.0, d);
  for (const auto& mono : poly_) {
    Jet2 t = Jet2::constant(mono.c, d);
    for (std::size_t a = 0; a < d; ++a)
      for (int k = 0; k < mono.e[a]; ++k) t = t * s[a];
    m = m + t;
  }
  return u * m;
}

TestFunction make_bump(const Box& support, std::uint64_t seed) { return TestFunction(support, seed); }

TestFunction make_bump(const GeometryContext& ctx, const Box& support, std::uint64_t seed, double margin) {
  if (!ctx.box_admissible(support, margin))
    throw DomainError("support box " + support.to_string() + " is not admissible for " + ctx.spec() +
                      " with margin " + std::to_string(margin));
  return TestFunction(support, seed);
}

}  // namespace hardy
