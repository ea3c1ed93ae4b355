// SPDX-License-Identifier: Apache-2.0
#pragma once

// Best constants: Bessel-pair shooting, a 1-D Sturm-Liouville eigensolver,
// sampled lower-bound certificates and trial-function upper bounds.

#include <optional>
#include <string>
#include <vector>

#include "hardy/box.hpp"
#include "hardy/expression.hpp"
#include "hardy/weights.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Bessel pairs: (r^{n-1} V y')' + c r^{n-1} W y = 0 on (0, 1).

struct BesselProblem {
  int n = 3;
  ScalarField V = ScalarField::constant(1.0);  // in the variable r
  ScalarField W = ScalarField::constant(1.0);
  double c = 0.0;
  double r_start = 1e-6;
  double rel_tol = 1e-10;
};

struct BesselVerdict {
  bool positive = true;  // PositiveOn01
  double r_star = 1.0;   // first sign change when !positive
  /// Vanishing forced by complex indicial exponents at an endpoint.
  bool oscillatory_endpoint = false;
};

/// Endpoint data of the Liouville normal form y_ss + c K y = 0, with s the
/// distance from the endpoint in ds = dr / (r^{n-1} V). kappa = s^2 K at
/// the endpoint; exponents solve tau (tau - 1) + c kappa = 0.
struct EndpointData {
  double kappa = 0.0;
  double distance = 0.0;  // s at r_start (or 1 - r_start)
  bool infinite = false;  // ds / dr not integrable at the endpoint
};

EndpointData bessel_endpoint(const BesselProblem& prob, int endpoint);

BesselVerdict bessel_shoot(const BesselProblem& prob);

struct BesselThreshold {
  double value = 0.0;
  double lo = 0.0;  // last PositiveOn01
  double hi = 0.0;  // last VanishesAt
  int iterations = 0;
};

/// Bisection on c in [c_lo, c_hi] to width <= tol.
BesselThreshold bessel_threshold(BesselProblem prob, double c_lo, double c_hi, double tol = 1e-4);

// ---------------------------------------------------------------------------
// Sturm-Liouville: min (int P y'^2 + Q y^2) / int R y^2 on [a, b].

enum class Boundary { Dirichlet, Natural };

struct SturmLiouvilleProblem {
  double a = 0.0;
  double b = 1.0;
  ScalarField P = ScalarField::constant(1.0);  // in the variable t (aliases r, x)
  ScalarField Q = ScalarField::constant(0.0);
  ScalarField R = ScalarField::constant(1.0);
  Boundary left = Boundary::Natural;
  Boundary right = Boundary::Natural;
  int mesh = 1024;
  int max_iterations = 5000;
};

struct SturmLiouvilleResult {
  double lambda = 0.0;  // at 2N
  std::vector<int> meshes;
  std::vector<double> ladder;  // lambda at N, 2N, 4N
  std::vector<double> nodes;   // eigenvector at 2N
  std::vector<double> eigenvector;
  bool monotone() const;
};

/// Smallest eigenvalue on one mesh.
double sl_eigenvalue(const SturmLiouvilleProblem& prob, int mesh, std::vector<double>* nodes = nullptr,
                     std::vector<double>* vector = nullptr);
SturmLiouvilleResult sl_min(const SturmLiouvilleProblem& prob);

/// Rayleigh quotient of the piecewise-linear interpolant of (nodes, values).
double sl_quotient(const SturmLiouvilleProblem& prob, const std::vector<double>& nodes,
                   const std::vector<double>& values);

Boundary parse_boundary(std::string_view s);

// ---------------------------------------------------------------------------
// Constant brackets for int V |grad u|^2 >= C int target u^2.

struct CertifyOptions {
  Box box;                   // quasi-random region
  std::size_t samples = 10'000;
  bool ladder = true;        // add rays toward 0 and infinity
  double ladder_min = 1e-3;
  double ladder_max = 1e6;
  int ladder_points = 400;
};

struct CertifyResult {
  double lower = 0.0;  // min of W / target over the samples
  double upper_ratio = 0.0;  // max of the same ratio
  std::vector<double> argmin;
  std::size_t samples = 0;
};

CertifyResult certify_lower_bound(const WeightProblem& prob, const CertifyOptions& opts);

/// Radial trial functions u(r) = r^a (1 + r^2)^b chi(r) with chi a smooth
/// cutoff equal to 0 outside [r_in, r_out] and to 1 on
/// [r_in e^w, r_out e^{-w}].
struct RadialTrial {
  double a = 0.0;
  double b = 0.0;
  double log_r_in = -10.0;
  double log_r_out = 10.0;
  double width = 2.0;
};

/// Which RadialTrial members the optimizer may move, with their ranges.
struct TrialParameter {
  enum Which { A, B, LogRIn, LogROut, Width } which;
  double lo;
  double hi;
};

struct TrialResult {
  double quotient = 0.0;
  RadialTrial best;
  int evaluations = 0;
};

/// Rayleigh quotient int V u'^2 r^{n-1} dr / int target u^2 r^{n-1} dr of a
/// radial trial, V and target evaluated along the first axis.
double radial_quotient(const WeightProblem& prob, const RadialTrial& trial, int nodes_per_unit = 64);

/// Minimize radial_quotient over at most three parameters by coordinate
/// descent with golden-section line searches. Throws NumericalError when
/// the denominator drops below 1e-14.
TrialResult trial_upper_bound(const WeightProblem& prob, RadialTrial start, const std::vector<TrialParameter>& free,
                              int sweeps = 4);

struct ConstantBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> claimed;
  bool consistent(double tol = 1e-9) const {
    if (lower > upper + tol) return false;
    if (claimed && (*claimed < lower - tol || *claimed > upper + tol)) return false;
    return true;
  }
};

}  // namespace hardy
