#include "idcp/potential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace idcp {

namespace {

constexpr int kGaussPoints = 16;
constexpr int kMaxPanels = 1 << 14;

struct GaussRule {
  std::array<double, kGaussPoints> nodes;
  std::array<double, kGaussPoints> weights;
};

// Nodes and weights of the 16-point rule on [-1, 1], from Newton iteration on
// the Legendre polynomial.
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    const int n = kGaussPoints;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double deriv = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        deriv = n * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / deriv;
        x -= step;
        if (std::abs(step) < 1e-15) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
      r.nodes[i] = -x;
      r.nodes[n - 1 - i] = x;
      r.weights[i] = w;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& rule = gauss_rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0;
  for (int i = 0; i < kGaussPoints; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Panel {
  double a, b;
  double refined;  // two-half estimate, kept as the panel value
  double error;    // gap between the one-panel and two-half estimates
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
  const double coarse = gauss_panel(f, a, b);
  const double mid = 0.5 * (a + b);
  const double refined = gauss_panel(f, a, mid) + gauss_panel(f, mid, b);
  return {a, b, refined, std::abs(coarse - refined)};
}

// Adaptive integration over [0, 1] seeded with panels split at the given
// interior breakpoints: repeatedly split the panel with the largest error
// estimate. Splitting is depth-unbounded but the panel count is capped, so
// isolated kinks may be refined deeply without exhausting the budget.
double integrate_adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints, double abs_tol) {
  std::vector<Panel> panels;
  double start = 0.0;
  for (double cut : breakpoints) {
    if (cut <= start + 1e-10 || cut >= 1.0 - 1e-10) continue;
    panels.push_back(make_panel(f, start, cut));
    start = cut;
  }
  panels.push_back(make_panel(f, start, 1.0));
  const auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::make_heap(panels.begin(), panels.end(), worse);
  double total_error = 0;
  for (const Panel& p : panels) total_error += p.error;
  // The per-panel estimate under-reports somewhat at square-root kinks, so
  // stop only once the accounted error sits well inside the request.
  while (total_error > 0.25 * abs_tol) {
    if (static_cast<int>(panels.size()) + 1 > kMaxPanels)
      fail(errc::quadrature_failure, "panel budget exhausted before reaching tolerance");
    std::pop_heap(panels.begin(), panels.end(), worse);
    const Panel worst = panels.back();
    panels.pop_back();
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Panel& half : {make_panel(f, worst.a, mid), make_panel(f, mid, worst.b)}) {
      total_error += half.error;
      panels.push_back(half);
      std::push_heap(panels.begin(), panels.end(), worse);
    }
  }
  double sum = 0;
  for (const Panel& p : panels) sum += p.refined;
  return sum;
}

void check_sizes(const TriangulatedSurface& surface, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != surface.vertex_count())
    fail(errc::invalid_config, std::string(what) + " size must match the vertex count");
}

struct FaceGeometry {
  std::array<int, 3> v;  // 0-based vertex indices, ascending
  Triple weights;        // opposite-edge inversive distances
};

std::vector<FaceGeometry> face_geometries(const TriangulatedSurface& surface,
                                          const InversiveWeights& weights) {
  std::vector<FaceGeometry> faces;
  faces.reserve(surface.faces().size());
  for (const Face& face : surface.faces()) {
    const auto [i, j, k] = face.v;
    faces.push_back({{i - 1, j - 1, k - 1},
                     {weights.at(surface.edge_index(j, k)), weights.at(surface.edge_index(i, k)),
                      weights.at(surface.edge_index(i, j))}});
  }
  return faces;
}

// Triangle inequality margins of one face at parameter t along the segment.
Triple face_margins(const FaceGeometry& face, const Eigen::VectorXd& from,
                    const Eigen::VectorXd& direction, double t) {
  Triple r;
  for (int a = 0; a < 3; ++a) r[a] = std::exp(from[face.v[a]] + t * direction[face.v[a]]);
  const Triple l = {edge_length(r[1], r[2], face.weights[0]),
                    edge_length(r[0], r[2], face.weights[1]),
                    edge_length(r[0], r[1], face.weights[2])};
  return {l[1] + l[2] - l[0], l[0] + l[2] - l[1], l[0] + l[1] - l[2]};
}

// Parameters where some face crosses the boundary of Delta along the segment.
// The angles have square-root kinks there; panels must not straddle them or
// the split-based error estimate can cancel and stop refinement early. Found
// by running a sign scan over every margin, then bisecting each crossing.
std::vector<double> kink_parameters(const std::vector<FaceGeometry>& faces,
                                    const Eigen::VectorXd& from,
                                    const Eigen::VectorXd& direction) {
  constexpr int kGrid = 128;
  std::vector<double> cuts;
  for (const FaceGeometry& face : faces) {
    Triple prev = face_margins(face, from, direction, 0.0);
    for (int s = 1; s <= kGrid; ++s) {
      const double t = static_cast<double>(s) / kGrid;
      const Triple curr = face_margins(face, from, direction, t);
      for (int c = 0; c < 3; ++c) {
        if ((prev[c] < 0) == (curr[c] < 0)) continue;
        double lo = static_cast<double>(s - 1) / kGrid, hi = t;
        double at_lo = prev[c];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double at_mid = face_margins(face, from, direction, mid)[c];
          if ((at_mid < 0) == (at_lo < 0)) {
            lo = mid;
            at_lo = at_mid;
          } else {
            hi = mid;
          }
        }
        cuts.push_back(0.5 * (lo + hi));
      }
      prev = curr;
    }
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

}  // namespace

CurvatureTarget CurvatureTarget::constant(const TriangulatedSurface& surface) {
  return {Eigen::VectorXd::Constant(surface.vertex_count(), average_curvature(surface))};
}

CurvatureTarget CurvatureTarget::prescribed(const TriangulatedSurface& surface,
                                            Eigen::VectorXd values, double tol) {
  check_sizes(surface, values, "target");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) fail(errc::non_finite_input, "target curvature must be finite");
  const double total = 2.0 * std::numbers::pi * surface.euler_characteristic();
  if (std::abs(values.sum() - total) > tol)
    fail(errc::bad_total_curvature, "target curvatures must sum to 2 pi chi(M)");
  return {std::move(values)};
}

Eigen::VectorXd potential_gradient(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& target) {
  check_sizes(surface, u, "point");
  check_sizes(surface, target, "target");
  return curvature_extended(surface, weights, PackingMetric::from_log(u)) - target;
}

double potential_increment(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           const Eigen::VectorXd& target, const Eigen::VectorXd& from,
                           const Eigen::VectorXd& to, double abs_tol) {
  check_sizes(surface, target, "target");
  check_sizes(surface, from, "segment start");
  check_sizes(surface, to, "segment end");
  const Eigen::VectorXd direction = to - from;
  if (direction.norm() == 0) return 0.0;
  const auto integrand = [&](double t) {
    const Eigen::VectorXd u = from + t * direction;
    return (curvature_extended(surface, weights, PackingMetric::from_log(u)) - target)
        .dot(direction);
  };
  const std::vector<double> cuts = kink_parameters(face_geometries(surface, weights), from, direction);
  return integrate_adaptive(integrand, cuts, abs_tol);
}

double potential_value(const TriangulatedSurface& surface, const InversiveWeights& weights,
                       const Eigen::VectorXd& u, const PotentialSpec& spec, double abs_tol) {
  return potential_increment(surface, weights, spec.target, spec.base_point, u, abs_tol);
}

ConvexityReport convexity_probe(const TriangulatedSurface& surface, const InversiveWeights& weights,
                                const PotentialSpec& spec, const ConvexitySamples& samples,
                                double tol) {
  ConvexityReport report;
  report.worst_midpoint_gap = -std::numeric_limits<double>::infinity();
  report.worst_monotone = std::numeric_limits<double>::infinity();
  report.worst_ray_gap = std::numeric_limits<double>::infinity();

  for (const auto& [a, b] : samples.pairs) {
    const Eigen::VectorXd mid = 0.5 * (a + b);
    // F(mid) - (F(a) + F(b))/2 equals half the gap between the two half
    // segment increments, so two short integrals decide the midpoint test.
    const double first = potential_increment(surface, weights, spec.target, a, mid, tol / 10);
    const double second = potential_increment(surface, weights, spec.target, mid, b, tol / 10);
    const double gap = 0.5 * (first - second);
    report.midpoint_checked += 1;
    report.midpoint_violations += gap > tol;
    report.worst_midpoint_gap = std::max(report.worst_midpoint_gap, gap);

    const Eigen::VectorXd grad_gap = potential_gradient(surface, weights, b, spec.target) -
                                     potential_gradient(surface, weights, a, spec.target);
    const double monotone = grad_gap.dot(b - a);
    report.monotone_checked += 1;
    report.monotone_violations += monotone < -tol;
    report.worst_monotone = std::min(report.worst_monotone, monotone);
  }

  for (const auto& direction : samples.ray_directions) {
    const Eigen::VectorXd near_point = samples.ray_center + samples.ray_near * direction;
    const Eigen::VectorXd far_point = samples.ray_center + samples.ray_far * direction;
    const double gap = potential_increment(surface, weights, spec.target, near_point, far_point);
    report.ray_checked += 1;
    report.ray_violations += gap <= 0;
    report.worst_ray_gap = std::min(report.worst_ray_gap, gap);
  }
  return report;
}

}  // namespace idcp
