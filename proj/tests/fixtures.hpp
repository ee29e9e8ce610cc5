// Shared fixtures: small closed triangulated surfaces, random metric helpers
// and finite-difference oracles used across the test binaries.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "idcp/curvature.hpp"

namespace fixtures {

// Boundary of the 3-simplex: 4 vertices, 6 edges, 4 faces, sphere.
inline idcp::TriangulatedSurface tetrahedron() {
  return idcp::TriangulatedSurface(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
}

// Octahedron: 6 vertices, 12 edges, 8 faces, sphere. Poles 1 and 6, equator
// cycle 2 3 4 5.
inline idcp::TriangulatedSurface octahedron() {
  return idcp::TriangulatedSurface(6, {{1, 2, 3},
                                       {1, 3, 4},
                                       {1, 4, 5},
                                       {1, 2, 5},
                                       {2, 3, 6},
                                       {3, 4, 6},
                                       {4, 5, 6},
                                       {2, 5, 6}});
}

// The 7-vertex triangulation of the torus (complete graph K7): faces
// {i, i+1, i+3} and {i, i+2, i+3} mod 7. Vertex-transitive, every vertex has
// degree 6.
inline idcp::TriangulatedSurface torus7() {
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
    faces.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
  }
  return idcp::TriangulatedSurface(7, faces);
}

// Tetrahedron weights with a single separated edge {2,3} and all others at 1.
inline idcp::InversiveWeights tetra_one_separated(const idcp::TriangulatedSurface& surface,
                                                  double separated = 3.0) {
  Eigen::VectorXd values = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(surface.edges().size()));
  values[surface.edge_index(2, 3)] = separated;
  return idcp::InversiveWeights::from_values(surface, values);
}

// Radii with log10 r uniform over [lo, hi].
inline Eigen::VectorXd random_radii(std::mt19937_64& rng, int n, double log10_lo, double log10_hi) {
  std::uniform_real_distribution<double> dist(log10_lo, log10_hi);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = std::pow(10.0, dist(rng));
  return r;
}

inline Eigen::VectorXd random_weights(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w[i] = dist(rng);
  return w;
}

// A metric inside Omega: perturbations of the unit metric with shrinking
// amplitude. The unit metric always lies in Omega on these fixtures, so the
// loop terminates.
inline idcp::PackingMetric random_omega_metric(const idcp::TriangulatedSurface& surface,
                                               const idcp::InversiveWeights& weights,
                                               std::mt19937_64& rng, double amplitude = 0.8) {
  const int n = surface.vertex_count();
  for (double a = amplitude; ; a *= 0.5) {
    std::uniform_real_distribution<double> dist(-a, a);
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = dist(rng);
    const idcp::PackingMetric metric = idcp::PackingMetric::from_log(u);
    if (idcp::in_omega(surface, weights, metric)) return metric;
    if (a < 1e-6) return idcp::PackingMetric::from_log(Eigen::VectorXd::Zero(n));
  }
}

// Central-difference oracle for d(curvature)/d(u).
inline Eigen::MatrixXd fd_curvature_jacobian(const idcp::TriangulatedSurface& surface,
                                             const idcp::InversiveWeights& weights,
                                             const Eigen::VectorXd& u, double h = 1e-6) {
  const int n = surface.vertex_count();
  Eigen::MatrixXd jac(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd up = u, down = u;
    up[j] += h;
    down[j] -= h;
    const Eigen::VectorXd k_up =
        idcp::curvature_extended(surface, weights, idcp::PackingMetric::from_log(up));
    const Eigen::VectorXd k_down =
        idcp::curvature_extended(surface, weights, idcp::PackingMetric::from_log(down));
    jac.col(j) = (k_up - k_down) / (2 * h);
  }
  return jac;
}

}  // namespace fixtures
