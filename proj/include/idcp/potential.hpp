// Ricci potentials: line integrals of the curvature residual one-form.
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "idcp/curvature.hpp"

namespace idcp {

// A curvature assignment K-bar with total 2 pi chi(M).
struct CurvatureTarget {
  Eigen::VectorXd values;

  // The constant assignment 2 pi chi(M) / N at every vertex.
  static CurvatureTarget constant(const TriangulatedSurface& surface);
  // An explicit assignment; rejects totals off 2 pi chi(M) by more than tol.
  static CurvatureTarget prescribed(const TriangulatedSurface& surface, Eigen::VectorXd values,
                                    double tol = 1e-9);
};

// Gradient of the potential at u: extended curvature minus the target.
Eigen::VectorXd potential_gradient(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& target);

// Integral of <K~ - K-bar, du> along the straight segment between two points,
// by adaptive 16-point Gauss-Legendre panels to the given absolute tolerance.
// The integrand is continuous everywhere and smooth away from boundary
// crossings of Omega; the segment is pre-split at every crossing so the
// square-root kinks sit on panel endpoints, where refinement stays reliable.
double potential_increment(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           const Eigen::VectorXd& target, const Eigen::VectorXd& from,
                           const Eigen::VectorXd& to, double abs_tol = 1e-10);

// Potential base point and target curvature.
struct PotentialSpec {
  Eigen::VectorXd base_point;
  Eigen::VectorXd target;
};

// Potential value at u relative to the base point. Path independent: the
// integrand one-form is closed, so the straight segment suffices.
double potential_value(const TriangulatedSurface& surface, const InversiveWeights& weights,
                       const Eigen::VectorXd& u, const PotentialSpec& spec, double abs_tol = 1e-10);

// Sample plan and outcome of the convexity probe.
struct ConvexitySamples {
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  Eigen::VectorXd ray_center;
  std::vector<Eigen::VectorXd> ray_directions;  // unit vectors with zero sum
  double ray_near = 1.0;
  double ray_far = 10.0;
};

struct ConvexityReport {
  int midpoint_checked = 0;
  int midpoint_violations = 0;
  double worst_midpoint_gap = 0;  // max of F(mid) - (F(a)+F(b))/2, nonpositive when convex
  int monotone_checked = 0;
  int monotone_violations = 0;
  double worst_monotone = 0;  // min of <grad F(b) - grad F(a), b - a>, nonnegative when convex
  int ray_checked = 0;
  int ray_violations = 0;
  double worst_ray_gap = 0;  // min of F(far) - F(near) along the sampled rays
};

ConvexityReport convexity_probe(const TriangulatedSurface& surface, const InversiveWeights& weights,
                                const PotentialSpec& spec, const ConvexitySamples& samples,
                                double tol = 1e-9);

}  // namespace idcp
