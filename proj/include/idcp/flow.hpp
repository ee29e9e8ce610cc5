// Time integration of the combinatorial curvature flow du/dt = K-bar - K~(u).
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "idcp/potential.hpp"

namespace idcp {

enum class FlowMethod { explicit_euler, rk4, newton_hybrid };
enum class FlowStatus { converged, max_time_reached, diverged };

struct FlowConfig {
  Eigen::VectorXd target;
  double dt = 0.01;
  double t_max = 200.0;
  double residual_tol = 1e-10;
  FlowMethod method = FlowMethod::rk4;
  bool normalize = false;      // keep sum(u) pinned to its initial value
  int record_every = 1;
  bool record_potential = false;  // potential relative to the start, per recorded sample
};

struct FlowSample {
  double t = 0;
  Eigen::VectorXd u;
  Eigen::VectorXd curvature;
  double residual = 0;
  bool in_omega = false;
  std::optional<double> potential;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  FlowStatus status = FlowStatus::max_time_reached;
  double final_time = 0;
  long steps = 0;
  int dt_halvings = 0;
  Eigen::VectorXd final_u;
};

// One explicit step from u. The hybrid method advances like rk4.
Eigen::VectorXd flow_step(const TriangulatedSurface& surface, const InversiveWeights& weights,
                          const Eigen::VectorXd& u, double dt, const Eigen::VectorXd& target,
                          FlowMethod method);

// Integrates the flow from the initial metric until the curvature residual
// falls below residual_tol or t reaches t_max. Steps that produce non-finite
// states or raise the potential are retried with a halved dt (at most 20
// halvings); a state that stays non-finite marks the trajectory diverged.
FlowTrajectory run_flow(const TriangulatedSurface& surface, const InversiveWeights& weights,
                        const PackingMetric& initial, const FlowConfig& config);

struct RateEstimate {
  double lambda = 0;     // exponential decay rate of the residual
  double r_squared = 0;  // quality of the log-linear fit
  int samples_used = 0;
};

// Least-squares fit of log residual over the tail where the residual lies in
// (1e-10, 1e-3). Requires a converged trajectory with at least 10 samples in
// that band.
RateEstimate estimate_rate(const FlowTrajectory& trajectory);

struct NewtonResult {
  Eigen::VectorXd u;
  int iterations = 0;
  double residual = 0;
};

// Damped Newton solve of K~(u) = target inside Omega, with backtracking line
// search on the potential. Steps that would leave Omega are shortened; the
// search failing outright raises line_search_stall.
NewtonResult newton_refine(const TriangulatedSurface& surface, const InversiveWeights& weights,
                           Eigen::VectorXd u, const Eigen::VectorXd& target, int max_iters = 50,
                           double tol = 1e-12);

}  // namespace idcp
