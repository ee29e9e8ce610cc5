#include "idcp/curvature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace idcp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PackingMetric PackingMetric::from_radii(const Eigen::VectorXd& radii) {
  PackingMetric m;
  m.radii = radii;
  m.log_radii.resize(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i])) fail(errc::non_finite_input, "radius must be finite");
    if (radii[i] <= 0)
      fail(errc::non_positive_radius, "radius at vertex " + std::to_string(i + 1) + " must be positive");
    m.log_radii[i] = std::log(radii[i]);
  }
  return m;
}

PackingMetric PackingMetric::from_log(const Eigen::VectorXd& log_radii) {
  PackingMetric m;
  m.log_radii = log_radii;
  m.radii.resize(log_radii.size());
  for (Eigen::Index i = 0; i < log_radii.size(); ++i) {
    if (!std::isfinite(log_radii[i])) fail(errc::non_finite_input, "log radius must be finite");
    m.radii[i] = std::exp(log_radii[i]);
    if (m.radii[i] <= 0 || !std::isfinite(m.radii[i]))
      fail(errc::non_finite_input, "log radius out of representable range");
  }
  return m;
}

InversiveWeights InversiveWeights::constant(const TriangulatedSurface& surface, double value) {
  return from_values(surface,
                     Eigen::VectorXd::Constant(static_cast<Eigen::Index>(surface.edges().size()), value));
}

InversiveWeights InversiveWeights::from_values(const TriangulatedSurface& surface,
                                               Eigen::VectorXd values) {
  if (values.size() != static_cast<Eigen::Index>(surface.edges().size()))
    fail(errc::invalid_config, "weight vector size must match the edge count");
  for (Eigen::Index e = 0; e < values.size(); ++e) {
    if (!std::isfinite(values[e])) fail(errc::non_finite_input, "inversive distance must be finite");
    if (values[e] < 0)
      fail(errc::negative_weight, "inversive distance on edge {" +
                                      std::to_string(surface.edges()[e].a) + ", " +
                                      std::to_string(surface.edges()[e].b) + "} below 0");
  }
  return InversiveWeights(std::move(values));
}

TriangleConfig face_config(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           const PackingMetric& metric, int face_index) {
  const auto& v = surface.faces()[face_index].v;
  TriangleConfig c;
  for (int a = 0; a < 3; ++a) {
    const int j = v[(a + 1) % 3], k = v[(a + 2) % 3];
    c.radii[a] = metric.radii[v[a] - 1];
    c.weights[a] = weights.at(surface.edge_index(j, k));
  }
  return c;
}

Eigen::VectorXd curvature_extended(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const PackingMetric& metric) {
  if (metric.radii.size() != surface.vertex_count())
    fail(errc::invalid_config, "metric size must match the vertex count");
  Eigen::VectorXd curvature = Eigen::VectorXd::Constant(surface.vertex_count(), kTwoPi);
  for (int fi = 0; fi < static_cast<int>(surface.faces().size()); ++fi) {
    const Triple theta = generalized_angles(triangle_lengths(face_config(surface, weights, metric, fi)));
    const auto& v = surface.faces()[fi].v;
    for (int a = 0; a < 3; ++a) curvature[v[a] - 1] -= theta[a];
  }
  return curvature;
}

double average_curvature(const TriangulatedSurface& surface) {
  return kTwoPi * surface.euler_characteristic() / surface.vertex_count();
}

double gauss_bonnet_defect(const TriangulatedSurface& surface, const Eigen::VectorXd& curvature) {
  return curvature.sum() - kTwoPi * surface.euler_characteristic();
}

bool in_omega(const TriangulatedSurface& surface, const InversiveWeights& weights,
              const PackingMetric& metric) {
  for (int fi = 0; fi < static_cast<int>(surface.faces().size()); ++fi)
    if (!in_delta(face_config(surface, weights, metric, fi))) return false;
  return true;
}

Eigen::MatrixXd curvature_jacobian(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const PackingMetric& metric) {
  if (!in_omega(surface, weights, metric))
    fail(errc::outside_omega, "curvature jacobian requires all faces inside Delta");
  const int n = surface.vertex_count();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int fi = 0; fi < static_cast<int>(surface.faces().size()); ++fi) {
    const Eigen::Matrix3d face_jac = triangle_angle_jacobian(face_config(surface, weights, metric, fi));
    const auto& v = surface.faces()[fi].v;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) jac(v[a] - 1, v[b] - 1) -= face_jac(a, b);
  }
  return jac;
}

}  // namespace idcp
