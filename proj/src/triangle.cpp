#include "idcp/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace idcp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_weight(double w) {
  if (!std::isfinite(w)) fail(errc::non_finite_input, "inversive distance must be finite");
  if (w < 0) fail(errc::negative_weight, "inversive distance " + std::to_string(w) + " below 0");
}

void check_radius(double r) {
  if (!std::isfinite(r)) fail(errc::non_finite_input, "radius must be finite");
  if (r <= 0) fail(errc::non_positive_radius, "radius " + std::to_string(r) + " must be positive");
}

}  // namespace

double edge_length(double ra, double rb, double inversive) {
  check_radius(ra);
  check_radius(rb);
  check_weight(inversive);
  return std::sqrt(ra * ra + rb * rb + 2.0 * ra * rb * inversive);
}

double lambda_clamp(double x) {
  if (std::isnan(x)) fail(errc::non_finite_input, "lambda of NaN");
  if (x <= -1.0) return kPi;
  if (x >= 1.0) return 0.0;
  return std::acos(x);
}

Triple triangle_lengths(const TriangleConfig& config) {
  const auto& r = config.radii;
  const auto& w = config.weights;
  Triple x;
  for (int a = 0; a < 3; ++a) {
    const int j = (a + 1) % 3, k = (a + 2) % 3;
    x[a] = edge_length(r[j], r[k], w[a]);
  }
  return x;
}

namespace {

// u + v - w with two compensated additions. The plain expression loses every
// significant digit when the result sits ten orders of magnitude below the
// operands, which is exactly the near-degenerate regime the clamped angles
// must resolve.
double inequality_margin(double u, double v, double w) {
  const double s = u + v;
  const double vp = s - u;
  const double e1 = (u - (s - vp)) + (v - vp);
  const double t = s - w;
  const double wp = t - s;
  const double e2 = (s - (t - wp)) + (-w - wp);
  return t + (e1 + e2);
}

}  // namespace

Triple generalized_angles(const Triple& x) {
  for (double v : x) {
    if (!std::isfinite(v)) fail(errc::non_finite_input, "edge length must be finite");
    if (v <= 0) fail(errc::non_positive_length, "edge length must be positive");
  }
  // Half-angle form of the clamped law of cosines. With c the cosine ratio of
  // the angle facing x[a], 1+c and 1-c factor into products of triangle
  // inequality margins, so tan(theta/2) = sqrt((1-c)/(1+c)) is computed
  // without cancellation. Clamping a negative factor to zero reproduces the
  // degenerate values pi and 0 exactly.
  Triple theta;
  for (int a = 0; a < 3; ++a) {
    const int j = (a + 1) % 3, k = (a + 2) % 3;
    const double p = inequality_margin(x[j], x[k], x[a]) * (x[a] + x[j] + x[k]);
    const double m = inequality_margin(x[a], x[k], x[j]) * inequality_margin(x[a], x[j], x[k]);
    theta[a] = 2.0 * std::atan2(std::sqrt(std::max(m, 0.0)), std::sqrt(std::max(p, 0.0)));
  }
  return theta;
}

bool lengths_in_delta(const Triple& x) {
  for (int a = 0; a < 3; ++a) {
    const int j = (a + 1) % 3, k = (a + 2) % 3;
    if (inequality_margin(x[j], x[k], x[a]) <= 0) return false;
  }
  return true;
}

bool in_delta(const TriangleConfig& config) { return lengths_in_delta(triangle_lengths(config)); }

Eigen::Matrix3d triangle_angle_jacobian(const TriangleConfig& config) {
  const Triple x = triangle_lengths(config);
  if (!lengths_in_delta(x)) fail(errc::outside_delta, "angle jacobian requires strict triangle inequalities");
  const Triple theta = generalized_angles(x);

  const double p0 = inequality_margin(x[1], x[2], x[0]) * (x[0] + x[1] + x[2]);
  const double m0 = inequality_margin(x[0], x[2], x[1]) * inequality_margin(x[0], x[1], x[2]);
  const double area = 0.25 * std::sqrt(p0 * m0);

  // d(theta)/d(lengths): diagonal x_a / 2A, off-diagonal -cos(theta_c) x_a / 2A
  // with c the index distinct from both row and column.
  Eigen::Matrix3d dtheta_dl;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) {
        dtheta_dl(a, b) = x[a] / (2.0 * area);
      } else {
        const int c = 3 - a - b;
        dtheta_dl(a, b) = -std::cos(theta[c]) * x[a] / (2.0 * area);
      }
    }

  // d(lengths)/d(u): the edge opposite e joins the other two vertices, so the
  // row for x_e has entries at the two endpoint columns only.
  const auto& r = config.radii;
  const auto& w = config.weights;
  Eigen::Matrix3d dl_du = Eigen::Matrix3d::Zero();
  for (int e = 0; e < 3; ++e) {
    const int j = (e + 1) % 3, k = (e + 2) % 3;
    dl_du(e, j) = (r[j] * r[j] + r[j] * r[k] * w[e]) / x[e];
    dl_du(e, k) = (r[k] * r[k] + r[j] * r[k] * w[e]) / x[e];
  }

  return dtheta_dl * dl_du;
}

double degenerate_radius(double rj, double rk, const Triple& weights) {
  check_radius(rj);
  check_radius(rk);
  for (double w : weights) check_weight(w);
  if (weights[0] <= 1.0)
    fail(errc::not_separated,
         "degenerate radius requires inversive distance > 1 on the opposite edge, got " +
             std::to_string(weights[0]));

  const double ljk = edge_length(rj, rk, weights[0]);
  const auto f = [&](double r) {
    return edge_length(r, rj, weights[2]) + edge_length(r, rk, weights[1]) - ljk;
  };
  const auto fprime = [&](double r) {
    return (r + rj * weights[2]) / edge_length(r, rj, weights[2]) +
           (r + rk * weights[1]) / edge_length(r, rk, weights[1]);
  };

  // f is strictly increasing with f(0) = rj + rk - ljk < 0 and f(ljk) > 0.
  double lo = 0.0, hi = ljk;
  while (hi - lo > 1e-14 * ljk) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double step = f(r) / fprime(r);
    const double next = r - step;
    if (next <= lo || next >= hi) break;
    r = next;
  }
  if (std::abs(f(r)) > 1e-12 * ljk)
    fail(errc::no_convergence, "degenerate radius residual above tolerance");
  return r;
}

Triple z_angle_caps(const Triple& weights) {
  for (double w : weights) check_weight(w);
  return {kPi - lambda_clamp(weights[0]), kPi - lambda_clamp(weights[1]),
          kPi - lambda_clamp(weights[2])};
}

bool in_z(const Triple& angles, const Triple& weights, double margin) {
  const Triple caps = z_angle_caps(weights);
  double sum = 0;
  for (int a = 0; a < 3; ++a) {
    if (!std::isfinite(angles[a])) return false;
    if (angles[a] <= margin || angles[a] >= caps[a] - margin) return false;
    sum += angles[a];
  }
  return std::abs(sum - kPi) <= 1e-9;
}

TriangleConfig delta_interior_point(const Triple& weights) {
  for (double w : weights) check_weight(w);

  // Relabel vertices so the opposite-edge weights descend: then the edge
  // {v1,v2} carries the smallest weight and {v2,v3} the largest.
  std::array<int, 3> p{0, 1, 2};
  std::sort(p.begin(), p.end(), [&](int a, int b) { return weights[a] > weights[b]; });
  const double i12 = weights[p[2]];
  const double i13 = weights[p[1]];

  // With r_{v1} = r_{v2} = 1 this choice makes l_{v1v3} = l_{v1v2}; the two
  // inequalities involving those edges then hold and only the one facing the
  // heaviest edge can fail. Raising r_{v1} fixes it while keeping the others.
  const double r3 = -i13 + std::sqrt(i13 * i13 + 1.0 + 2.0 * i12);

  TriangleConfig config;
  config.weights = weights;
  for (double big = 1.0; big < 1e18; big *= 2.0) {
    config.radii[p[0]] = big;
    config.radii[p[1]] = 1.0;
    config.radii[p[2]] = r3;
    const Triple x = triangle_lengths(config);
    const double scale = x[0] + x[1] + x[2];
    double margin = scale;
    for (int a = 0; a < 3; ++a)
      margin = std::min(margin, x[(a + 1) % 3] + x[(a + 2) % 3] - x[a]);
    if (margin > 1e-6 * scale) {
      const double norm = std::cbrt(config.radii[0] * config.radii[1] * config.radii[2]);
      for (double& r : config.radii) r /= norm;
      return config;
    }
  }
  fail(errc::no_convergence, "no interior configuration found");
}

namespace {

Triple angles_of_u(const Triple& u, const Triple& weights) {
  TriangleConfig c{{std::exp(u[0]), std::exp(u[1]), std::exp(u[2])}, weights};
  return generalized_angles(triangle_lengths(c));
}

double sup_distance(const Triple& a, const Triple& b) {
  double d = 0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// One damped Newton descent toward the given target. Returns true when the
// residual drops below tol; u is advanced in place either way.
bool newton_toward(Triple& u, const Triple& target, const Triple& weights, double tol,
                   Triple& best_u, double& best_residual, const Triple& final_target) {
  for (int iter = 0; iter < 64; ++iter) {
    TriangleConfig c{{std::exp(u[0]), std::exp(u[1]), std::exp(u[2])}, weights};
    const Triple theta = generalized_angles(triangle_lengths(c));
    const double residual = sup_distance(theta, target);

    const double final_residual = sup_distance(theta, final_target);
    if (final_residual < best_residual) {
      best_residual = final_residual;
      best_u = u;
    }
    if (residual <= tol) return true;

    // Kernel direction (1,1,1) is removed by bordering with the constraint
    // sum(delta) = 0.
    const Eigen::Matrix3d jac = triangle_angle_jacobian(c);
    Eigen::Matrix4d bordered = Eigen::Matrix4d::Zero();
    bordered.topLeftCorner<3, 3>() = jac;
    bordered.block<3, 1>(0, 3).setOnes();
    bordered.block<1, 3>(3, 0).setOnes();
    Eigen::Vector4d rhs;
    rhs << target[0] - theta[0], target[1] - theta[1], target[2] - theta[2], 0.0;
    const Eigen::Vector4d sol = bordered.fullPivLu().solve(rhs);

    double alpha = 1.0;
    bool stepped = false;
    while (alpha >= 1e-12) {
      Triple cand{u[0] + alpha * sol[0], u[1] + alpha * sol[1], u[2] + alpha * sol[2]};
      TriangleConfig cc{{std::exp(cand[0]), std::exp(cand[1]), std::exp(cand[2])}, weights};
      const Triple xc = triangle_lengths(cc);
      if (lengths_in_delta(xc)) {
        const double res_cand = sup_distance(generalized_angles(xc), target);
        if (res_cand < (1.0 - 1e-4 * alpha) * residual) {
          u = cand;
          stepped = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!stepped) return false;
  }
  return false;
}

}  // namespace

Triple invert_angle_map(const Triple& target, const Triple& weights, double tol) {
  for (double t : target)
    if (!std::isfinite(t)) fail(errc::non_finite_input, "target angle must be finite");
  if (!in_z(target, weights)) fail(errc::target_outside_z, "target angles must lie strictly inside Z");

  // Project onto the plane sum = pi so the residual can vanish.
  Triple goal = target;
  const double shift = (kPi - (goal[0] + goal[1] + goal[2])) / 3.0;
  for (double& g : goal) g += shift;

  const TriangleConfig start = delta_interior_point(weights);
  Triple u{std::log(start.radii[0]), std::log(start.radii[1]), std::log(start.radii[2])};
  Triple best_u = u;
  double best_residual = std::numeric_limits<double>::infinity();

  // If plain damped Newton stalls, retreat to a midpoint target: Z is convex
  // and the current angles lie in Z, so intermediate targets stay valid.
  std::vector<Triple> stack{goal};
  int attempts = 0;
  while (!stack.empty()) {
    if (++attempts > 256)
      throw NoConvergenceError("angle map inversion exceeded its iteration budget",
                               {std::exp(best_u[0]), std::exp(best_u[1]), std::exp(best_u[2])},
                               best_residual);
    const Triple current = stack.back();
    if (newton_toward(u, current, weights, tol, best_u, best_residual, goal)) {
      stack.pop_back();
      continue;
    }
    if (stack.size() > 64)
      throw NoConvergenceError("angle map inversion continuation stack overflow",
                               {std::exp(best_u[0]), std::exp(best_u[1]), std::exp(best_u[2])},
                               best_residual);
    const Triple theta = angles_of_u(u, weights);
    stack.push_back({0.5 * (theta[0] + current[0]), 0.5 * (theta[1] + current[1]),
                     0.5 * (theta[2] + current[2])});
  }

  const double mean = (u[0] + u[1] + u[2]) / 3.0;
  return {std::exp(u[0] - mean), std::exp(u[1] - mean), std::exp(u[2] - mean)};
}

}  // namespace idcp
