#include "idcp/flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace idcp {

namespace {

Eigen::VectorXd curvature_at(const TriangulatedSurface& surface, const InversiveWeights& weights,
                             const Eigen::VectorXd& u) {
  return curvature_extended(surface, weights, PackingMetric::from_log(u));
}

void validate_config(const TriangulatedSurface& surface, const FlowConfig& config) {
  if (!(config.dt > 0) || config.dt > 0.5)
    fail(errc::invalid_config, "dt must lie in (0, 0.5]");
  if (!(config.t_max > 0)) fail(errc::invalid_config, "t_max must be positive");
  if (!(config.residual_tol >= 1e-13))
    fail(errc::invalid_config, "residual tolerance must be at least 1e-13");
  if (config.record_every < 1) fail(errc::invalid_config, "record_every must be positive");
  // Reject targets with the wrong total before solving; the flow preserves
  // total curvature, so such a target can never be met.
  CurvatureTarget::prescribed(surface, config.target);
}

}  // namespace

Eigen::VectorXd flow_step(const TriangulatedSurface& surface, const InversiveWeights& weights,
                          const Eigen::VectorXd& u, double dt, const Eigen::VectorXd& target,
                          FlowMethod method) {
  const auto rhs = [&](const Eigen::VectorXd& point) -> Eigen::VectorXd {
    return target - curvature_at(surface, weights, point);
  };
  if (method == FlowMethod::explicit_euler) return u + dt * rhs(u);
  const Eigen::VectorXd k1 = rhs(u);
  const Eigen::VectorXd k2 = rhs(u + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = rhs(u + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = rhs(u + dt * k3);
  return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

FlowTrajectory run_flow(const TriangulatedSurface& surface, const InversiveWeights& weights,
                        const PackingMetric& initial, const FlowConfig& config) {
  validate_config(surface, config);

  FlowTrajectory traj;
  Eigen::VectorXd u = initial.log_radii;
  const double sum_u0 = u.sum();
  Eigen::VectorXd curvature = curvature_at(surface, weights, u);
  double t = 0;
  double dt = config.dt;
  long step = 0;
  double potential_acc = 0;

  // Newton phase bookkeeping for the hybrid method.
  int omega_streak = 0;
  double last_newton_attempt = std::numeric_limits<double>::infinity();

  Eigen::VectorXd last_recorded_u = u;
  const auto record = [&](double time) {
    FlowSample sample;
    sample.t = time;
    sample.u = u;
    sample.curvature = curvature;
    sample.residual = (curvature - config.target).lpNorm<Eigen::Infinity>();
    sample.in_omega = in_omega(surface, weights, PackingMetric::from_log(u));
    if (config.record_potential) {
      // Increments between recorded points may use the straight segment: the
      // integral is path independent.
      potential_acc += potential_increment(surface, weights, config.target, last_recorded_u, u);
      sample.potential = potential_acc;
      last_recorded_u = u;
    }
    traj.samples.push_back(std::move(sample));
  };

  record(0.0);

  while (true) {
    const double residual = (curvature - config.target).lpNorm<Eigen::Infinity>();
    if (residual <= config.residual_tol) {
      traj.status = FlowStatus::converged;
      break;
    }
    if (t >= config.t_max) {
      traj.status = FlowStatus::max_time_reached;
      break;
    }

    if (config.method == FlowMethod::newton_hybrid) {
      const bool omega_now = in_omega(surface, weights, PackingMetric::from_log(u));
      omega_streak = (omega_now && residual < 1e-3) ? omega_streak + 1 : 0;
      if (omega_streak >= 10 && residual < 0.1 * last_newton_attempt) {
        last_newton_attempt = residual;
        try {
          const NewtonResult refined =
              newton_refine(surface, weights, u, config.target, 50, config.residual_tol);
          if (refined.residual <= config.residual_tol) {
            u = refined.u;
            curvature = curvature_at(surface, weights, u);
            t += dt * std::max(refined.iterations, 1);
            step += refined.iterations;
            traj.status = FlowStatus::converged;
            break;
          }
        } catch (const Error&) {
          // Not yet in the Newton basin; keep flowing.
        }
        omega_streak = 0;
      }
    }

    const double h_base = std::min(dt, config.t_max - t);
    double h = h_base;
    bool accepted = false;
    Eigen::VectorXd u_next, curvature_next;
    for (int halvings = 0; halvings <= 20; ++halvings) {
      bool finite = false;
      try {
        u_next = flow_step(surface, weights, u, h, config.target, config.method);
        finite = u_next.allFinite();
        if (finite) {
          curvature_next = curvature_at(surface, weights, u_next);
          finite = curvature_next.allFinite();
        }
      } catch (const Error&) {
        // A trial state overflowed the representable radius range; treat it
        // like any other non-finite step and retry shorter.
        finite = false;
      }
      if (finite) {
        // Trapezoid estimate of the potential change; the exact flow only
        // decreases the potential, so an increase flags an unstable step.
        const Eigen::VectorXd delta = u_next - u;
        const double trap = 0.5 * ((curvature - config.target).dot(delta) +
                                   (curvature_next - config.target).dot(delta));
        if (trap <= 1e-9 || halvings == 20) {
          accepted = true;
          if (h < dt) dt = h;
          break;
        }
      }
      h *= 0.5;
      ++traj.dt_halvings;
    }
    if (!accepted) {
      traj.status = FlowStatus::diverged;
      break;
    }

    u = u_next;
    curvature = curvature_next;
    if (config.normalize) {
      u.array() -= (u.sum() - sum_u0) / u.size();
      curvature = curvature_at(surface, weights, u);
    }
    t += h;
    ++step;
    if (dt < config.dt && step % 50 == 0) dt = std::min(2.0 * dt, config.dt);
    if (step % config.record_every == 0) record(t);
  }

  if (traj.samples.empty() || traj.samples.back().t != t) record(t);
  traj.final_time = t;
  traj.steps = step;
  traj.final_u = u;
  return traj;
}

RateEstimate estimate_rate(const FlowTrajectory& trajectory) {
  if (trajectory.status != FlowStatus::converged)
    fail(errc::not_converged, "rate estimation requires a converged trajectory");
  std::vector<std::pair<double, double>> tail;
  for (const FlowSample& s : trajectory.samples)
    if (s.residual > 1e-10 && s.residual < 1e-3) tail.emplace_back(s.t, std::log(s.residual));
  if (tail.size() < 10)
    fail(errc::insufficient_samples,
         "need at least 10 samples with residual in (1e-10, 1e-3), have " +
             std::to_string(tail.size()));

  double mean_t = 0, mean_y = 0;
  for (const auto& [x, y] : tail) {
    mean_t += x;
    mean_y += y;
  }
  mean_t /= tail.size();
  mean_y /= tail.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : tail) {
    sxx += (x - mean_t) * (x - mean_t);
    sxy += (x - mean_t) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  RateEstimate estimate;
  estimate.lambda = -sxy / sxx;
  estimate.r_squared = (sxy * sxy) / (sxx * syy);
  estimate.samples_used = static_cast<int>(tail.size());
  return estimate;
}

NewtonResult newton_refine(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           Eigen::VectorXd u, const Eigen::VectorXd& target, int max_iters,
                           double tol) {
  if (!in_omega(surface, weights, PackingMetric::from_log(u)))
    fail(errc::outside_omega, "Newton refinement requires a metric in Omega");
  const int n = static_cast<int>(u.size());

  Eigen::VectorXd gradient = potential_gradient(surface, weights, u, target);
  double residual = gradient.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < max_iters; ++iter) {
    if (residual <= tol) return {u, iter, residual};

    const Eigen::MatrixXd hessian =
        curvature_jacobian(surface, weights, PackingMetric::from_log(u));
    // The kernel direction (all ones) is annihilated by a rank-one shift; the
    // gradient has zero sum, so the solution is unaffected on its complement.
    const double shift = std::max(1.0, hessian.trace()) / n;
    const Eigen::MatrixXd regular =
        hessian + shift * Eigen::MatrixXd::Ones(n, n) / n;
    const Eigen::VectorXd direction = regular.ldlt().solve(-gradient);

    const double slope = gradient.dot(direction);
    double alpha = 1.0;
    bool stepped = false;
    while (alpha >= std::pow(2.0, -30)) {
      const Eigen::VectorXd candidate = u + alpha * direction;
      if (in_omega(surface, weights, PackingMetric::from_log(candidate))) {
        if (residual > 1e-6) {
          // Armijo decrease measured on the potential itself.
          const double quad_tol = std::max(1e-14, 1e-3 * std::abs(1e-4 * alpha * slope));
          const double change =
              potential_increment(surface, weights, target, u, candidate, quad_tol);
          if (change <= 1e-4 * alpha * slope) stepped = true;
        } else {
          // Near the solution the quadrature noise swamps the Armijo test;
          // accept on residual decrease instead.
          const Eigen::VectorXd g_next = potential_gradient(surface, weights, candidate, target);
          if (g_next.lpNorm<Eigen::Infinity>() <= residual) stepped = true;
        }
        if (stepped) {
          u = candidate;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!stepped) fail(errc::line_search_stall, "no acceptable Newton step length");

    gradient = potential_gradient(surface, weights, u, target);
    residual = gradient.lpNorm<Eigen::Infinity>();
  }
  return {u, max_iters, residual};
}

}  // namespace idcp
