// SPDX-License-Identifier: Apache-2.0
#pragma once

// Tensor Gauss-Legendre grids and random compactly supported test functions.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hardy/box.hpp"
#include "hardy/geometry.hpp"
#include "hardy/jet.hpp"

namespace hardy {

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;
/// Default distance kept between supports and singular sets.
inline constexpr double kSingularMargin = 1e-2;

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

class QuadratureGrid {
 public:
  QuadratureGrid(Box box, int nodes_per_axis, std::size_t budget = kDefaultNodeBudget);

  const Box& box() const noexcept { return box_; }
  int nodes_per_axis() const noexcept { return n_; }
  std::size_t dim() const noexcept { return box_.dim(); }
  std::size_t size() const noexcept { return size_; }

  /// Nodes and weights of one axis, already mapped onto the box.
  std::span<const double> axis_nodes(std::size_t axis) const { return nodes_[axis]; }
  std::span<const double> axis_weights(std::size_t axis) const { return weights_[axis]; }

  /// Visit every node in lexicographic order (last axis fastest).
  /// `index` holds the per-axis node indices.
  template <class Visit>
  void for_each(Visit&& visit) const {
    const std::size_t d = dim();
    std::array<std::size_t, kMaxDim> index{};
    std::array<double, kMaxDim> x{};
    for (std::size_t a = 0; a < d; ++a) x[a] = nodes_[a][0];
    for (std::size_t count = 0; count < size_; ++count) {
      double w = 1.0;
      for (std::size_t a = 0; a < d; ++a) w *= weights_[a][index[a]];
      visit(std::span<const double>(x.data(), d), w, std::span<const std::size_t>(index.data(), d));
      for (std::size_t a = d; a-- > 0;) {
        if (++index[a] < static_cast<std::size_t>(n_)) {
          x[a] = nodes_[a][index[a]];
          break;
        }
        index[a] = 0;
        x[a] = nodes_[a][0];
      }
    }
  }

 private:
  Box box_;
  int n_;
  std::size_t size_;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<double>> weights_;
};

QuadratureGrid build_grid(const Box& box, int nodes_per_axis, std::size_t budget = kDefaultNodeBudget);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// sum_i w_i g(x_i). Throws NumericalError at the first non-finite value.
double integrate(const QuadratureGrid& grid, const std::function<double(std::span<const double>)>& integrand);

/// u(x) = scale * m(s) * prod_i b(s_i), s the affine image of x in [-1,1]^d,
/// b(s) = exp(-1/(1 - s^2)) and m = 1 + (random cubic polynomial with
/// coefficients in [-1,1], rescaled so that |m - 1| <= 1/2).
class TestFunction {
 public:
  TestFunction(Box support, std::uint64_t seed);

  const Box& support() const noexcept { return box_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t dim() const noexcept { return box_.dim(); }
  /// Normalization factor making max |u| = 1.
  double scale() const noexcept { return scale_; }

  double value(std::span<const double> x) const;
  Jet1 jet1(std::span<const double> x) const;
  Jet2 jet2(std::span<const double> x) const;

  /// Modulation polynomial m and its gradient in the scaled variables s.
  Jet1 modulation(std::span<const double> s) const;
  /// One-dimensional bump (b, b', b'') at s.
  static std::array<double, 3> bump(double s);

  std::span<const double> centers() const { return center_; }
  std::span<const double> half_widths() const { return half_; }

 private:
  struct Monomial {
    double c;
    std::array<std::uint8_t, kMaxDim> e;
    std::uint8_t degree;
    std::array<std::uint8_t, 3> vars;  // variable of each factor
  };
  Box box_;
  std::uint64_t seed_;
  double scale_ = 1.0;
  std::vector<double> center_;
  std::vector<double> half_;
  std::vector<Monomial> poly_;
};

TestFunction make_bump(const Box& support, std::uint64_t seed);
/// Same, after checking that the support keeps `margin` from the singular
/// set and the chart boundary of `ctx`. Throws DomainError otherwise.
TestFunction make_bump(const GeometryContext& ctx, const Box& support, std::uint64_t seed,
                       double margin = kSingularMargin);

}  // namespace hardy
