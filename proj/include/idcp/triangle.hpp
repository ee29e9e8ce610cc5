// Geometry of a single triangle in an inversive distance circle packing.
#pragma once

#include <Eigen/Dense>
#include <array>

#include "idcp/error.hpp"

namespace idcp {

using Triple = std::array<double, 3>;

// Length of the edge between circles of radius ra and rb at inversive
// distance I: sqrt(ra^2 + rb^2 + 2 ra rb I).
double edge_length(double ra, double rb, double inversive);

// Clamped arc cosine: pi for x <= -1, arccos(x) on [-1, 1], 0 for x >= 1.
double lambda_clamp(double x);

// One packed triangle. Entry a of weights is the inversive distance of the
// edge opposite vertex a; entry a of radii is the radius at vertex a.
struct TriangleConfig {
  Triple radii;
  Triple weights;
};

// lengths[a] = length of the edge opposite vertex a.
Triple triangle_lengths(const TriangleConfig& config);

// Generalized inner angles of a length triple. When the strict triangle
// inequalities hold these are the Euclidean angles; when one length dominates
// the angle facing it is pi and the other two vanish. Always sums to pi.
Triple generalized_angles(const Triple& lengths);

// Strict triangle inequalities.
bool lengths_in_delta(const Triple& lengths);
bool in_delta(const TriangleConfig& config);

// d(theta_a)/d(u_b) with u = ln r, for a configuration strictly inside Delta.
// Symmetric, negative semi-definite, kernel (1,1,1).
Eigen::Matrix3d triangle_angle_jacobian(const TriangleConfig& config);

// For a separated edge (weights[0] = I_jk > 1) and fixed opposite radii, the
// unique radius at vertex i where the triangle collapses: l_ij + l_ik = l_jk.
// weights follows the TriangleConfig convention with i at position 0.
double degenerate_radius(double rj, double rk, const Triple& weights);

// Upper angle bounds of the range Z: caps[a] = pi - lambda_clamp(weights[a]).
Triple z_angle_caps(const Triple& weights);

// Membership in Z: angles sum to pi and each lies strictly between 0 and its
// cap with the given margin.
bool in_z(const Triple& angles, const Triple& weights, double margin = 1e-12);

// A configuration strictly inside Delta with unit radius product.
TriangleConfig delta_interior_point(const Triple& weights);

// Thrown by invert_angle_map when the iteration stalls; carries the best
// iterate seen.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, const Triple& best, double residual)
      : Error(errc::no_convergence, message), best_radii(best), best_residual(residual) {}

  Triple best_radii;
  double best_residual = 0;
};

// Radii with unit product whose generalized angles match the target, found by
// damped Newton in u = ln r restricted to sum(u) = 0. The target must lie
// strictly inside Z.
Triple invert_angle_map(const Triple& target, const Triple& weights, double tol = 1e-12);

}  // namespace idcp
