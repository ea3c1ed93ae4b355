// SPDX-License-Identifier: Apache-2.0
#pragma once

// Geometries as a frame of vector fields X_1..X_k plus a volume density w.
//
//   grad_g u = (X_1 u, ..., X_k u)
//   div_g G  = w^{-1} sum_j d_j( w * sum_i G_i X_i^j )
//
// The divergence is the adjoint of grad_g for the measure w dx, so every
// geometry shares one implementation of the weight identities.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/box.hpp"
#include "hardy/expression.hpp"
#include "hardy/jet.hpp"

namespace hardy {

enum class GeometryKind { Euclidean, EuclideanRadial, HalfSpace, HyperbolicBall, Heisenberg, Grushin, Edge };

/// Frame coefficients and density evaluated at one admissible point.
struct FramePoint {
  std::array<double, kMaxDim> x{};
  std::size_t ambient = 0;  // m
  std::size_t frame = 0;    // k
  /// coefficient[i][j] = X_i^j as a 1-jet in the ambient coordinates.
  std::array<std::array<Jet1, kMaxDim>, kMaxDim> coefficient{};
  double density = 1.0;
  /// d_j w / w
  std::array<double, kMaxDim> log_density_grad{};

  std::span<const double> point() const { return {x.data(), ambient}; }
};

using FrameVector = std::array<double, kMaxDim>;

class GeometryContext {
 public:
  static GeometryContext euclidean(int n);
  /// Radial direction only: the single frame field x/|x| . grad.
  static GeometryContext euclidean_radial(int n);
  static GeometryContext half_space(int n);
  static GeometryContext hyperbolic_ball(int n);
  static GeometryContext heisenberg(int n);
  static GeometryContext grushin(int d, int k, double gamma);
  static GeometryContext edge(int n, int q);

  /// Parse a catalog spec such as "heisenberg:n=1" or "grushin:d=3,k=1,gamma=1".
  static GeometryContext from_spec(std::string_view spec);

  GeometryKind kind() const noexcept { return kind_; }
  const std::string& spec() const noexcept { return spec_; }
  std::size_t ambient_dim() const noexcept { return coordinates_.size(); }
  std::size_t frame_size() const noexcept { return frame_.size(); }
  const std::vector<std::string>& coordinates() const noexcept { return coordinates_; }
  /// Named helper expressions (r, rho, psi, ...) available in parse().
  const std::map<std::string, ScalarField, std::less<>>& helpers() const noexcept { return helpers_; }
  const ScalarField& density_expression() const noexcept { return density_source_; }

  /// Integer or real parameter of the geometry (n, d, k, q, gamma).
  double parameter(const std::string& name) const;

  /// Parse an expression in this chart; helper names are substituted.
  ScalarField parse(std::string_view source) const;
  /// Compile against this chart's coordinates.
  CompiledField compile(const ScalarField& f, const ParamMap& params = {}) const;

  /// Inside the chart and off the singular set.
  bool in_domain(std::span<const double> x) const;
  /// Box lies in the chart at distance >= margin from the singular set and
  /// from the chart boundary.
  bool box_admissible(const Box& box, double margin) const;

  /// Evaluate the frame at x. Throws DomainError outside the domain.
  FramePoint at(std::span<const double> x) const;

 private:
  GeometryContext() = default;
  void set_frame(const std::vector<std::vector<std::string>>& coefficients, const std::string& density);

  GeometryKind kind_ = GeometryKind::Euclidean;
  std::string spec_;
  std::map<std::string, double> params_;
  std::vector<std::string> coordinates_;
  std::map<std::string, ScalarField, std::less<>> helpers_;
  std::vector<std::vector<std::optional<CompiledField>>> frame_;
  ScalarField density_source_;
  std::optional<CompiledField> density_;  // empty: w = 1
};

/// Components (X_i f)(p) of the frame gradient.
FrameVector frame_gradient(const FramePoint& p, const Jet2& f);
FrameVector frame_gradient(const GeometryContext& ctx, const CompiledField& f, const FramePoint& p);

/// X_i f as a 1-jet; needs the 2-jet of f.
Jet1 frame_derivative(const FramePoint& p, const Jet2& f, std::size_t i);

/// Adjoint divergence of the field sum_i G_i X_i from 1-jets of its frame
/// components.
double divergence(const FramePoint& p, std::span<const Jet1> components);

double frame_divergence(const GeometryContext& ctx, std::span<const CompiledField> field, const FramePoint& p);
double frame_divergence(const GeometryContext& ctx, const VectorFieldExpr& field, const FramePoint& p,
                        const ParamMap& params = {});

/// div_g(grad_g f).
double laplace_beltrami(const FramePoint& p, const Jet2& f);
double laplace_beltrami(const GeometryContext& ctx, const CompiledField& f, const FramePoint& p);

/// Squared frame norm.
double squared_norm(const FrameVector& v, std::size_t k);

}  // namespace hardy
