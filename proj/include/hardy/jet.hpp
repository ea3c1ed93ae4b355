// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>

namespace hardy {

/// Largest ambient dimension handled by the jet types.
inline constexpr std::size_t kMaxDim = 6;
inline constexpr std::size_t kMaxTri = kMaxDim * (kMaxDim + 1) / 2;

/// Packed index of entry (i, j) of a symmetric matrix, upper triangle.
constexpr std::size_t tri_index(std::size_t i, std::size_t j) noexcept {
  if (i > j) {
    const std::size_t t = i;
    i = j;
    j = t;
  }
  return j * (j + 1) / 2 + i;
}

/// Value and gradient of a scalar field at a point.
struct Jet1 {
  double value = 0.0;
  std::array<double, kMaxDim> grad{};
  std::size_t dim = 0;

  static Jet1 constant(double v, std::size_t dim) {
    Jet1 j;
    j.value = v;
    j.dim = dim;
    return j;
  }
  static Jet1 variable(double v, std::size_t index, std::size_t dim) {
    Jet1 j = constant(v, dim);
    j.grad[index] = 1.0;
    return j;
  }

  /// Chain rule for a scalar function h with h(value) = h0, h'(value) = h1.
  Jet1 apply(double h0, double h1, double /*h2*/ = 0.0) const {
    Jet1 r;
    r.dim = dim;
    r.value = h0;
    for (std::size_t i = 0; i < dim; ++i) r.grad[i] = h1 * grad[i];
    return r;
  }

  Jet1& operator+=(const Jet1& o) {
    value += o.value;
    for (std::size_t i = 0; i < dim; ++i) grad[i] += o.grad[i];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    value -= o.value;
    for (std::size_t i = 0; i < dim; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  Jet1& operator*=(double s) {
    value *= s;
    for (std::size_t i = 0; i < dim; ++i) grad[i] *= s;
    return *this;
  }
  Jet1 operator-() const {
    Jet1 r = *this;
    r *= -1.0;
    return r;
  }
  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator*(Jet1 a, double s) { return a *= s; }
  friend Jet1 operator*(double s, Jet1 a) { return a *= s; }
  friend Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r;
    r.dim = a.dim;
    r.value = a.value * b.value;
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
    return r;
  }
  friend Jet1 operator/(const Jet1& a, const Jet1& b) {
    const double inv = 1.0 / b.value;
    return a * b.apply(inv, -inv * inv);
  }
};

/// Value, gradient and Hessian of a scalar field at a point. Second-order
/// truncated Taylor arithmetic: products and compositions are exact.
struct Jet2 {
  double value = 0.0;
  std::array<double, kMaxDim> grad{};
  std::array<double, kMaxTri> hess{};  // upper triangle, see tri_index
  std::size_t dim = 0;

  static Jet2 constant(double v, std::size_t dim) {
    Jet2 j;
    j.value = v;
    j.dim = dim;
    return j;
  }
  static Jet2 variable(double v, std::size_t index, std::size_t dim) {
    Jet2 j = constant(v, dim);
    j.grad[index] = 1.0;
    return j;
  }

  double hessian(std::size_t i, std::size_t j) const { return hess[tri_index(i, j)]; }

  Jet1 truncate() const {
    Jet1 r;
    r.dim = dim;
    r.value = value;
    r.grad = grad;
    return r;
  }

  /// Chain rule for h with h0 = h(v), h1 = h'(v), h2 = h''(v).
  Jet2 apply(double h0, double h1, double h2) const {
    Jet2 r;
    r.dim = dim;
    r.value = h0;
    for (std::size_t j = 0; j < dim; ++j) {
      r.grad[j] = h1 * grad[j];
      for (std::size_t i = 0; i <= j; ++i) {
        const std::size_t k = tri_index(i, j);
        r.hess[k] = h1 * hess[k] + h2 * grad[i] * grad[j];
      }
    }
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    value += o.value;
    for (std::size_t i = 0; i < dim; ++i) grad[i] += o.grad[i];
    for (std::size_t k = 0; k < dim * (dim + 1) / 2; ++k) hess[k] += o.hess[k];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    value -= o.value;
    for (std::size_t i = 0; i < dim; ++i) grad[i] -= o.grad[i];
    for (std::size_t k = 0; k < dim * (dim + 1) / 2; ++k) hess[k] -= o.hess[k];
    return *this;
  }
  Jet2& operator*=(double s) {
    value *= s;
    for (std::size_t i = 0; i < dim; ++i) grad[i] *= s;
    for (std::size_t k = 0; k < dim * (dim + 1) / 2; ++k) hess[k] *= s;
    return *this;
  }
  Jet2 operator-() const {
    Jet2 r = *this;
    r *= -1.0;
    return r;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.dim = a.dim;
    r.value = a.value * b.value;
    for (std::size_t j = 0; j < a.dim; ++j) {
      r.grad[j] = a.value * b.grad[j] + b.value * a.grad[j];
      for (std::size_t i = 0; i <= j; ++i) {
        const std::size_t k = tri_index(i, j);
        r.hess[k] = a.value * b.hess[k] + b.value * a.hess[k] + a.grad[i] * b.grad[j] +
                    a.grad[j] * b.grad[i];
      }
    }
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double inv = 1.0 / b.value;
    return a * b.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
  }
};

}  // namespace hardy
