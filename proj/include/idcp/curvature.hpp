// Extended discrete curvature of a packing metric on a closed surface.
#pragma once

#include <Eigen/Dense>

#include "idcp/surface.hpp"
#include "idcp/triangle.hpp"

namespace idcp {

// Per-vertex radii together with their logarithms u = ln r.
struct PackingMetric {
  Eigen::VectorXd radii;
  Eigen::VectorXd log_radii;

  static PackingMetric from_radii(const Eigen::VectorXd& radii);
  static PackingMetric from_log(const Eigen::VectorXd& log_radii);
};

// Per-edge inversive distances, aligned with surface.edges().
class InversiveWeights {
 public:
  static InversiveWeights constant(const TriangulatedSurface& surface, double value);
  static InversiveWeights from_values(const TriangulatedSurface& surface, Eigen::VectorXd values);

  double at(int edge_index) const { return values_[edge_index]; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  explicit InversiveWeights(Eigen::VectorXd values) : values_(std::move(values)) {}
  Eigen::VectorXd values_;
};

// The triangle of one face: radii at its vertices (ascending vertex order)
// and weights of the opposite edges.
TriangleConfig face_config(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           const PackingMetric& metric, int face_index);

// Extended curvature 2 pi minus the sum of generalized angles at each vertex.
// Defined for every positive radius vector.
Eigen::VectorXd curvature_extended(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const PackingMetric& metric);

// The constant curvature value 2 pi chi(M) / N.
double average_curvature(const TriangulatedSurface& surface);

// Total curvature minus 2 pi chi(M); zero for every metric.
double gauss_bonnet_defect(const TriangulatedSurface& surface, const Eigen::VectorXd& curvature);

// True when every face satisfies the strict triangle inequalities.
bool in_omega(const TriangulatedSurface& surface, const InversiveWeights& weights,
              const PackingMetric& metric);

// Jacobian d(curvature)/d(u), assembled from per-face angle Jacobians.
// Positive semi-definite with kernel spanned by the all-ones vector on a
// connected surface. Requires the metric to lie in Omega.
Eigen::MatrixXd curvature_jacobian(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const PackingMetric& metric);

}  // namespace idcp
