// SPDX-License-Identifier: Apache-2.0
#pragma once

// Quadrature checks of the weight identities on test functions.
//
//   lhs       = int V |grad_g u|^p dg
//   weight    = int W |u|^p dg
//   remainder = int V |grad_g u + u F|^2 dg                     (p = 2)
//             = int V R(u, F) dg                                (p != 2)
//   R = (p-1)|F|^p |u|^p + |grad u|^p + p |F|^{p-2} |u|^{p-2} u <F, grad u>
//
// The identity is lhs = weight + remainder; every check runs at two
// resolutions, N and 2N nodes per axis.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/weights.hpp"

namespace hardy {

inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr double kRemainderFloor = -1e-10;
inline constexpr double kPointwiseFloor = -1e-12;

struct IdentityValues {
  int nodes = 0;
  double lhs = 0.0;
  double weight_term = 0.0;
  double remainder_term = 0.0;
  /// f^2 |grad_g(u/f)|^2 form of the remainder, potential sources with V = 1.
  std::optional<double> remainder_alt;
  double residual = 0.0;
  double relative_residual = 0.0;
  double margin = 0.0;
  /// Smallest pointwise R over the nodes (L^p checks; +inf otherwise).
  double min_pointwise = 0.0;
};

struct IdentityReport {
  std::uint64_t seed = 0;
  double p = 2.0;
  std::array<IdentityValues, 2> resolutions;

  const IdentityValues& coarse() const { return resolutions[0]; }
  const IdentityValues& fine() const { return resolutions[1]; }
  /// Relative gap between the two remainder forms at the fine resolution.
  std::optional<double> remainder_form_gap() const;
  /// Both residuals within tol, the finer one no worse than 10x the coarser
  /// (with a 1e-13 noise floor), remainder and margin >= -1e-10, pointwise R
  /// >= -1e-12.
  bool passes(double tol) const;
};

/// Values at one resolution for a batch of test functions that share the
/// grid. Geometry and weight are evaluated once per node.
std::vector<IdentityValues> integrate_identity(const WeightEvaluator& eval, std::span<const TestFunction> bumps,
                                               const QuadratureGrid& grid);

/// check_identity at N = grid.nodes_per_axis() and 2N; batched over bumps.
std::vector<IdentityReport> check_identity_batch(const WeightProblem& prob, std::span<const TestFunction> bumps,
                                                 const QuadratureGrid& grid);

/// p = 2 identity.
IdentityReport check_identity(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid);
/// L^p identity through the general-p formulas, also at p = 2 (so the two
/// routes can be compared); throws NumericalError if R < -1e-12 at some node.
IdentityReport check_identity_lp(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid);

struct InequalityValues {
  int nodes = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // c * int target |u|^p dg
  double margin = 0.0;
};

struct InequalityReport {
  double constant = 0.0;
  std::array<InequalityValues, 2> resolutions;
  bool passes(double tol = 1e-10) const { return resolutions[1].margin >= -tol && resolutions[0].margin >= -tol; }
};

/// int V |grad u|^p - c int target |u|^p at N and 2N.
InequalityReport check_inequality(const WeightProblem& prob, const TestFunction& u, const QuadratureGrid& grid,
                                  double c);

struct AdjointnessValues {
  int nodes = 0;
  double divergence_term = 0.0;  // int div_g(F) u dg
  double gradient_term = 0.0;    // int <F, grad_g u> dg
  double relative_residual = 0.0;
};

/// int div_g(F) u dg + int <F, grad_g u> dg, which vanishes for compactly
/// supported u; relative to the larger of the two terms.
AdjointnessValues check_adjointness(const GeometryContext& ctx, std::span<const CompiledField> F,
                                    const TestFunction& u, const QuadratureGrid& grid);

}  // namespace hardy
