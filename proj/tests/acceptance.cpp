// Acceptance checks for the packing flow library. Each criterion exercises a
// public guarantee end to end and prints a single PASS or FAIL line; the exit
// code is the number of failures. Tolerances are part of the contract and are
// spelled out next to each check.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "idcp/admissibility.hpp"
#include "idcp/flow.hpp"

using namespace idcp;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& text) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", index, text.c_str());
  if (!ok) ++failures;
}

std::string num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", value);
  return buffer;
}

struct Fixture {
  std::string name;
  TriangulatedSurface surface;
};

std::vector<Fixture> all_fixtures() {
  return {{"tetrahedron", fixtures::tetrahedron()},
          {"octahedron", fixtures::octahedron()},
          {"torus", fixtures::torus7()}};
}

struct MetricSample {
  PackingMetric metric;
  InversiveWeights weights;
};

// The shared sample set for the Gauss-Bonnet and necessity sweeps: a block of
// extreme radii spanning eleven decades, a moderate block, and a block with
// weights in [0, 1) whose members always lie in Omega.
std::vector<MetricSample> curvature_samples(const TriangulatedSurface& surface,
                                            std::mt19937_64& rng) {
  const int n = surface.vertex_count();
  const int m = static_cast<int>(surface.edges().size());
  std::vector<MetricSample> samples;
  samples.reserve(1000);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd radii;
    Eigen::VectorXd weights;
    if (i < 400) {
      radii = fixtures::random_radii(rng, n, -8, 3);
      weights = fixtures::random_weights(rng, m, 0, 5);
      if (i == 0) radii[0] = 1e-8;
    } else if (i < 700) {
      radii = fixtures::random_radii(rng, n, -2, 1);
      weights = fixtures::random_weights(rng, m, 0, 5);
    } else {
      radii = fixtures::random_radii(rng, n, -1, 1);
      weights = fixtures::random_weights(rng, m, 0, 1);
    }
    samples.push_back({PackingMetric::from_radii(radii),
                       InversiveWeights::from_values(surface, weights)});
  }
  return samples;
}

Eigen::VectorXd normalized_radii(const Eigen::VectorXd& u) {
  return (u.array() - u.mean()).exp();
}

Eigen::VectorXd random_u(std::mt19937_64& rng, int n, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = dist(rng);
  return u;
}

FlowConfig flow_config(const Eigen::VectorXd& target, FlowMethod method = FlowMethod::explicit_euler) {
  FlowConfig config;
  config.target = target;
  config.dt = 0.05;
  config.t_max = 200;
  config.residual_tol = 1e-10;
  config.method = method;
  config.record_every = 50;
  return config;
}

struct FlowOutcome {
  bool ok = false;
  FlowTrajectory trajectory;
  double residual = 0;
};

FlowOutcome run_to_target(const TriangulatedSurface& surface, const InversiveWeights& weights,
                          const Eigen::VectorXd& u0, const FlowConfig& config) {
  FlowOutcome outcome;
  try {
    outcome.trajectory = run_flow(surface, weights, PackingMetric::from_log(u0), config);
  } catch (const Error&) {
    return outcome;
  }
  if (outcome.trajectory.status != FlowStatus::converged) return outcome;
  const PackingMetric final_metric = PackingMetric::from_log(outcome.trajectory.final_u);
  const Eigen::VectorXd curvature = curvature_extended(surface, weights, final_metric);
  outcome.residual = (curvature - config.target).lpNorm<Eigen::Infinity>();
  outcome.ok = outcome.residual <= 1e-10 && outcome.trajectory.final_time <= 200 &&
               in_omega(surface, weights, final_metric);
  return outcome;
}

// Criterion 1: the total extended curvature equals 2 pi chi(M) for every
// positive radius vector, to 1e-9, across 1000 samples per fixture.
void criterion_gauss_bonnet(const std::vector<Fixture>& fixtures,
                            const std::vector<std::vector<MetricSample>>& samples) {
  double worst = 0;
  int count = 0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    for (const MetricSample& sample : samples[f]) {
      const Eigen::VectorXd k =
          curvature_extended(fixtures[f].surface, sample.weights, sample.metric);
      worst = std::max(worst, std::abs(gauss_bonnet_defect(fixtures[f].surface, k)));
      ++count;
    }
  }
  report(1, worst <= 1e-9,
         "gauss-bonnet total holds to 1e-9 on " + std::to_string(count) +
             " random metrics, radii down to 1e-8 (worst defect " + num(worst) + ")");
}

// Criterion 2: the curvature Jacobian is symmetric PSD with a one-dimensional
// kernel spanned by the all-ones vector, and matches finite differences.
void criterion_jacobian(const std::vector<Fixture>& fixtures) {
  std::mt19937_64 rng(202);
  const double canonical[] = {1.0, 0.0, 2.0};
  double worst_sym = 0, worst_neg = 0, worst_kernel = 0, worst_fd = 0;
  bool kernel_dim_ok = true;
  int count = 0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const TriangulatedSurface& surface = fixtures[f].surface;
    const int n = surface.vertex_count();
    const int m = static_cast<int>(surface.edges().size());
    const InversiveWeights uniform = InversiveWeights::constant(surface, canonical[f]);
    for (int i = 0; i < 200; ++i) {
      InversiveWeights weights = uniform;
      PackingMetric metric = PackingMetric::from_radii(Eigen::VectorXd::Ones(n));
      if (i % 2 == 0) {
        weights = InversiveWeights::from_values(surface, fixtures::random_weights(rng, m, 0, 1));
        metric = PackingMetric::from_radii(fixtures::random_radii(rng, n, -1, 1));
      } else {
        // Keep a margin of several finite-difference steps to the boundary of
        // Omega so the central differences never straddle an angle kink.
        for (int tries = 0; tries < 200; ++tries) {
          metric = fixtures::random_omega_metric(surface, weights, rng);
          bool clear = true;
          for (int j = 0; j < n && clear; ++j) {
            for (double sign : {-1.0, 1.0}) {
              Eigen::VectorXd u = metric.log_radii;
              u[j] += sign * 5e-6;
              if (!in_omega(surface, weights, PackingMetric::from_log(u))) clear = false;
            }
          }
          if (clear) break;
        }
      }

      const Eigen::MatrixXd jac = curvature_jacobian(surface, weights, metric);
      worst_sym = std::max(worst_sym, (jac - jac.transpose()).cwiseAbs().maxCoeff());
      worst_kernel =
          std::max(worst_kernel, (jac * Eigen::VectorXd::Ones(n)).lpNorm<Eigen::Infinity>());

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(jac);
      const Eigen::VectorXd values = eigs.eigenvalues();
      worst_neg = std::max(worst_neg, -values.minCoeff());
      const double lambda_max = values.maxCoeff();
      int small = 0;
      for (int j = 0; j < n; ++j)
        if (values[j] < 1e-10 * lambda_max) ++small;
      if (small != 1) kernel_dim_ok = false;

      const Eigen::MatrixXd fd =
          fixtures::fd_curvature_jacobian(surface, weights, metric.log_radii);
      worst_fd = std::max(worst_fd, (jac - fd).cwiseAbs().maxCoeff());
      ++count;
    }
  }
  const bool ok = worst_sym <= 1e-12 && worst_neg <= 1e-10 && kernel_dim_ok &&
                  worst_kernel <= 1e-10 && worst_fd <= 1e-5;
  report(2, ok,
         "jacobian symmetric psd, kernel = span(1), matches finite differences on " +
             std::to_string(count) + " omega metrics (sym " + num(worst_sym) + ", min eig -" +
             num(worst_neg) + ", |L1| " + num(worst_kernel) + ", fd " + num(worst_fd) + ")");
}

// Criterion 3: flows reach the constant curvature metric from fixed and random
// starts, including starts outside Omega, within t <= 200 at residual 1e-10.
void criterion_convergence(std::vector<Eigen::VectorXd>* torus_starts_out) {
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  const InversiveWeights tetra_w = InversiveWeights::constant(tetra, 1.0);
  const TriangulatedSurface torus = fixtures::torus7();
  const InversiveWeights torus_w = InversiveWeights::constant(torus, 2.0);

  int converged = 0, total = 0, outside = 0;
  double worst_residual = 0, worst_time = 0;

  Eigen::VectorXd r0(4);
  r0 << 1.5, 0.8, 1.1, 0.9;
  {
    const FlowConfig config = flow_config(CurvatureTarget::constant(tetra).values);
    const FlowOutcome outcome =
        run_to_target(tetra, tetra_w, r0.array().log().matrix(), config);
    ++total;
    if (outcome.ok) ++converged;
    worst_residual = std::max(worst_residual, outcome.residual);
    worst_time = std::max(worst_time, outcome.trajectory.final_time);
  }

  std::mt19937_64 rng(303);
  const FlowConfig config = flow_config(CurvatureTarget::constant(torus).values);
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd u0 = random_u(rng, 7, 0.8);
    if (i >= 45) {
      u0[i - 45] -= 4.5;
      while (in_omega(torus, torus_w, PackingMetric::from_log(u0))) u0[i - 45] -= 1;
      ++outside;
    }
    torus_starts_out->push_back(u0);
    const FlowOutcome outcome = run_to_target(torus, torus_w, u0, config);
    ++total;
    if (outcome.ok) ++converged;
    worst_residual = std::max(worst_residual, outcome.residual);
    worst_time = std::max(worst_time, outcome.trajectory.final_time);
  }

  const bool ok = converged == total && total == 51 && outside == 5;
  report(3, ok,
         std::to_string(converged) + "/" + std::to_string(total) +
             " flows converged to residual 1e-10, " + std::to_string(outside) +
             " starts outside omega (worst residual " + num(worst_residual) + ", latest t " +
             num(worst_time) + ")");
}

// Criterion 4: the residual decays exponentially at the rate set by the
// smallest nonzero eigenvalue of the Jacobian at the limit.
void criterion_rate(std::vector<Eigen::VectorXd> torus_starts) {
  if (torus_starts.empty()) {
    std::mt19937_64 rng(404);
    torus_starts.push_back(random_u(rng, 7, 0.5));
  }
  struct Case {
    std::string name;
    TriangulatedSurface surface;
    InversiveWeights weights;
    Eigen::VectorXd u0;
  };
  Eigen::VectorXd r0(4);
  r0 << 1.5, 0.8, 1.1, 0.9;
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  const TriangulatedSurface torus = fixtures::torus7();
  std::vector<Case> cases;
  cases.push_back(
      {"tetrahedron", tetra, InversiveWeights::constant(tetra, 1.0), r0.array().log().matrix()});
  cases.push_back({"torus", torus, InversiveWeights::constant(torus, 2.0), torus_starts.front()});

  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    FlowConfig config = flow_config(CurvatureTarget::constant(c.surface).values, FlowMethod::rk4);
    config.record_every = 1;
    const FlowOutcome outcome = run_to_target(c.surface, c.weights, c.u0, config);
    if (!outcome.ok) {
      ok = false;
      detail += c.name + " did not converge; ";
      continue;
    }
    const RateEstimate rate = estimate_rate(outcome.trajectory);
    const Eigen::MatrixXd jac = curvature_jacobian(
        c.surface, c.weights, PackingMetric::from_log(outcome.trajectory.final_u));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(jac);
    const Eigen::VectorXd values = eigs.eigenvalues();
    double smallest_nonzero = values.maxCoeff();
    for (int j = 0; j < values.size(); ++j)
      if (values[j] > 1e-8 * values.maxCoeff())
        smallest_nonzero = std::min(smallest_nonzero, values[j]);
    const double relative = std::abs(rate.lambda - smallest_nonzero) / smallest_nonzero;
    if (rate.r_squared < 0.99 || relative > 0.2) ok = false;
    detail += c.name + " lambda " + num(rate.lambda) + " vs eig " + num(smallest_nonzero) +
              " (off " + num(relative) + ", r2 " + num(rate.r_squared) + "); ";
  }
  report(4, ok, "residual decay rate matches the spectral gap: " + detail);
}

// Criterion 5: the limit is independent of the start, for the constant target
// and for a random admissible prescribed target, up to scaling.
void criterion_rigidity() {
  struct Case {
    TriangulatedSurface surface;
    InversiveWeights weights;
  };
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  const TriangulatedSurface torus = fixtures::torus7();
  std::vector<Case> cases;
  cases.push_back({tetra, InversiveWeights::constant(tetra, 1.0)});
  cases.push_back({torus, InversiveWeights::constant(torus, 2.0)});

  std::mt19937_64 rng(505);
  double worst_spread = 0;
  int groups = 0, converged = 0, total = 0;
  for (const Case& c : cases) {
    const int n = c.surface.vertex_count();
    std::vector<Eigen::VectorXd> targets;
    targets.push_back(CurvatureTarget::constant(c.surface).values);
    targets.push_back(curvature_extended(
        c.surface, c.weights, fixtures::random_omega_metric(c.surface, c.weights, rng, 0.4)));
    for (const Eigen::VectorXd& target : targets) {
      const FlowConfig config = flow_config(target);
      std::vector<Eigen::VectorXd> limits;
      for (int i = 0; i < 20; ++i) {
        const FlowOutcome outcome = run_to_target(c.surface, c.weights, random_u(rng, n, 0.5), config);
        ++total;
        if (!outcome.ok) continue;
        ++converged;
        limits.push_back(normalized_radii(outcome.trajectory.final_u));
      }
      ++groups;
      if (limits.empty()) continue;
      for (const Eigen::VectorXd& limit : limits)
        worst_spread =
            std::max(worst_spread, (limit - limits.front()).lpNorm<Eigen::Infinity>());
    }
  }
  const bool ok = converged == total && total == 80 && worst_spread <= 1e-6;
  report(5, ok,
         "normalized limits agree across starts: " + std::to_string(converged) + "/" +
             std::to_string(total) + " flows over " + std::to_string(groups) +
             " fixture-target groups, worst spread " + num(worst_spread));
}

// Criterion 6: prescribing the curvature of a known interior metric recovers
// that metric up to scaling.
void criterion_prescribed() {
  struct Case {
    TriangulatedSurface surface;
    InversiveWeights weights;
  };
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  const TriangulatedSurface torus = fixtures::torus7();
  std::vector<Case> cases;
  cases.push_back({tetra, InversiveWeights::constant(tetra, 1.0)});
  cases.push_back({torus, InversiveWeights::constant(torus, 2.0)});

  std::mt19937_64 rng(606);
  double worst = 0;
  int recovered = 0, total = 0;
  for (const Case& c : cases) {
    const int n = c.surface.vertex_count();
    const PackingMetric star = fixtures::random_omega_metric(c.surface, c.weights, rng, 0.4);
    const Eigen::VectorXd target = curvature_extended(c.surface, c.weights, star);
    const Eigen::VectorXd expected = normalized_radii(star.log_radii);
    const FlowConfig config = flow_config(target);
    for (int i = 0; i < 3; ++i) {
      const FlowOutcome outcome = run_to_target(c.surface, c.weights, random_u(rng, n, 0.6), config);
      ++total;
      if (!outcome.ok) continue;
      const double diff =
          (normalized_radii(outcome.trajectory.final_u) - expected).lpNorm<Eigen::Infinity>();
      worst = std::max(worst, diff);
      if (diff <= 1e-6) ++recovered;
    }
  }
  report(6, recovered == total && total == 6,
         "prescribed curvature recovers the source metric up to scaling in " +
             std::to_string(recovered) + "/" + std::to_string(total) + " flows (worst " +
             num(worst) + ")");
}

// Criterion 7: every realized curvature satisfies the subset half-space
// conditions, strictly so when the metric lies in Omega.
void criterion_necessity(const std::vector<Fixture>& fixtures,
                         const std::vector<std::vector<MetricSample>>& samples) {
  double worst_omega = std::numeric_limits<double>::infinity();
  double worst_any = std::numeric_limits<double>::infinity();
  int omega_count = 0, count = 0;
  bool ok = true;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const TriangulatedSurface& surface = fixtures[f].surface;
    for (const MetricSample& sample : samples[f]) {
      const Eigen::VectorXd k = curvature_extended(surface, sample.weights, sample.metric);
      const SubsetConditions conditions(surface, sample.weights);
      const NecessityVerdict verdict = conditions.evaluate(k, MarginMode::strict);
      const double margin = verdict.worst.margin;
      worst_any = std::min(worst_any, margin);
      if (margin < -1e-9) ok = false;
      if (in_omega(surface, sample.weights, sample.metric)) {
        ++omega_count;
        worst_omega = std::min(worst_omega, margin);
        if (!(margin > 0)) ok = false;
      }
      ++count;
    }
  }
  if (omega_count < 100) ok = false;
  report(7, ok,
         "half-space conditions hold on " + std::to_string(count) + " realized curvatures, strictly on " +
             std::to_string(omega_count) + " omega metrics (weakest omega margin " +
             num(worst_omega) + ", weakest overall " + num(worst_any) + ")");
}

// Criterion 8: shrinking the radii over a subset drives its total curvature to
// the closed-form bound; the sqrt-factor extrapolation of probes down to 1e-8
// lands within 1e-4.
void criterion_degenerate() {
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  struct Config {
    std::string name;
    InversiveWeights weights;
  };
  std::vector<Config> configs;
  configs.push_back({"I=0", InversiveWeights::constant(tetra, 0.0)});
  configs.push_back({"I=1", InversiveWeights::constant(tetra, 1.0)});
  configs.push_back({"one edge I=3", fixtures::tetra_one_separated(tetra, 3.0)});

  std::vector<std::vector<int>> subsets;
  for (int i = 1; i <= 4; ++i) subsets.push_back({i});
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) subsets.push_back({i, j});

  const std::vector<double> factors = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  double worst = 0;
  int probes = 0;
  bool ok = true;
  for (const Config& config : configs) {
    for (const std::vector<int>& members : subsets) {
      const DegenerateProbe probe = degenerate_limit_probe(
          tetra, config.weights, VertexSubset(tetra, members), factors);
      const double off = std::abs(probe.extrapolated - probe.predicted);
      worst = std::max(worst, off);
      if (off > 1e-4) ok = false;
      ++probes;
    }
  }
  report(8, ok,
         "degenerate limits match closed forms on " + std::to_string(probes) +
             " subset probes down to factor 1e-8 (worst gap " + num(worst) + ")");
}

// Criterion 9: the angle map of a single triangle is a bijection onto Z; the
// inverse round-trips targets to 1e-10 and separates distinct targets.
void criterion_triangle_inverse() {
  const std::vector<Triple> weight_sets = {
      {0, 0, 0}, {1, 1, 1}, {3, 0, 0}, {3, 2, 0}};
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> unit(0, 1);
  double worst_round = 0;
  bool ok = true;
  int inverted = 0;
  for (const Triple& weights : weight_sets) {
    std::vector<Triple> targets, radii;
    while (static_cast<int>(targets.size()) < 500) {
      Triple theta;
      double total = 0;
      for (double& t : theta) {
        t = -std::log(unit(rng));
        total += t;
      }
      for (double& t : theta) t *= pi / total;
      if (!in_z(theta, weights, 1e-4)) continue;
      const Triple r = invert_angle_map(theta, weights);
      const Triple round = generalized_angles(triangle_lengths(TriangleConfig{r, weights}));
      for (int a = 0; a < 3; ++a)
        worst_round = std::max(worst_round, std::abs(round[a] - theta[a]));
      targets.push_back(theta);
      radii.push_back(r);
      ++inverted;
    }
    for (std::size_t i = 0; i < targets.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < targets.size(); ++j) {
        double angle_gap = 0, radius_gap = 0;
        for (int a = 0; a < 3; ++a) {
          angle_gap = std::max(angle_gap, std::abs(targets[i][a] - targets[j][a]));
          radius_gap = std::max(radius_gap, std::abs(radii[i][a] - radii[j][a]));
        }
        if (angle_gap > 1e-8 && radius_gap <= 1e-12) {
          ok = false;
          break;
        }
      }
    }
  }
  ok = ok && worst_round <= 1e-10 && inverted == 2000;
  report(9, ok,
         "angle map inverts " + std::to_string(inverted) +
             " targets across 4 weight sets (worst round trip " + num(worst_round) +
             "), distinct targets separate");
}

// Criterion 10: the curvature one-form integrates path-independently, the
// potential is midpoint convex everywhere, and its finite-difference Hessian
// matches the curvature Jacobian inside Omega.
void criterion_potential() {
  struct Case {
    TriangulatedSurface surface;
    InversiveWeights weights;
  };
  const TriangulatedSurface tetra = fixtures::tetrahedron();
  const TriangulatedSurface torus = fixtures::torus7();
  std::vector<Case> cases;
  cases.push_back({tetra, InversiveWeights::constant(tetra, 1.0)});
  cases.push_back({torus, InversiveWeights::constant(torus, 2.0)});

  std::mt19937_64 rng(1010);
  bool ok = true;

  double worst_path = 0;
  for (const Case& c : cases) {
    const int n = c.surface.vertex_count();
    const Eigen::VectorXd target = CurvatureTarget::constant(c.surface).values;
    for (int i = 0; i < 10; ++i) {
      const Eigen::VectorXd a = random_u(rng, n, 1.5);
      const Eigen::VectorXd b = random_u(rng, n, 1.5);
      const Eigen::VectorXd via = random_u(rng, n, 1.5);
      const double direct = potential_increment(c.surface, c.weights, target, a, b, 1e-12);
      const double detour = potential_increment(c.surface, c.weights, target, a, via, 1e-12) +
                            potential_increment(c.surface, c.weights, target, via, b, 1e-12);
      worst_path = std::max(worst_path, std::abs(direct - detour));
    }
  }
  if (worst_path > 2e-10) ok = false;

  const Case& probe = cases.front();
  const Eigen::VectorXd target = CurvatureTarget::constant(probe.surface).values;
  int violations = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double amplitude = i < 700 ? 2.0 : 0.5;
    const Eigen::VectorXd a = random_u(rng, 4, amplitude);
    const Eigen::VectorXd b = random_u(rng, 4, amplitude);
    const Eigen::VectorXd mid = 0.5 * (a + b);
    const double up = potential_increment(probe.surface, probe.weights, target, a, mid, 1e-11);
    const double down = potential_increment(probe.surface, probe.weights, target, mid, b, 1e-11);
    // Midpoint convexity reads F(mid) - (F(a)+F(b))/2 = (up - down)/2 <= 0.
    worst_gap = std::max(worst_gap, (up - down) / 2);
    if (up - down > 2e-9) ++violations;
  }
  if (violations != 0) ok = false;

  double worst_hessian = 0;
  for (const Case& c : cases) {
    const int n = c.surface.vertex_count();
    const Eigen::VectorXd c_target = CurvatureTarget::constant(c.surface).values;
    const PackingMetric metric = fixtures::random_omega_metric(c.surface, c.weights, rng, 0.3);
    const PotentialSpec spec{metric.log_radii, c_target};
    const auto value = [&](const Eigen::VectorXd& u) {
      return potential_value(c.surface, c.weights, u, spec, 1e-13);
    };
    const double h = 1e-3;
    Eigen::MatrixXd hessian(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        Eigen::VectorXd pp = metric.log_radii, pm = metric.log_radii, mp = metric.log_radii,
                        mm = metric.log_radii;
        pp[i] += h; pp[j] += h;
        pm[i] += h; pm[j] -= h;
        mp[i] -= h; mp[j] += h;
        mm[i] -= h; mm[j] -= h;
        hessian(i, j) = hessian(j, i) =
            (value(pp) - value(pm) - value(mp) + value(mm)) / (4 * h * h);
      }
    }
    const Eigen::MatrixXd jac = curvature_jacobian(c.surface, c.weights, metric);
    worst_hessian = std::max(worst_hessian, (hessian - jac).cwiseAbs().maxCoeff());
  }
  if (worst_hessian > 1e-4) ok = false;

  report(10, ok,
         "potential coherent: path independence " + num(worst_path) + ", " +
             std::to_string(violations) + "/1000 midpoint violations (worst gap " +
             num(worst_gap) + "), hessian vs jacobian " + num(worst_hessian));
}

}  // namespace

int main() {
  const auto guard = [](int index, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report(index, false, std::string("unexpected exception: ") + e.what());
    }
  };

  const std::vector<Fixture> fixtures = all_fixtures();
  std::mt19937_64 sample_rng(101);
  std::vector<std::vector<MetricSample>> samples;
  for (const Fixture& fixture : fixtures)
    samples.push_back(curvature_samples(fixture.surface, sample_rng));

  std::vector<Eigen::VectorXd> torus_starts;
  guard(1, [&] { criterion_gauss_bonnet(fixtures, samples); });
  guard(2, [&] { criterion_jacobian(fixtures); });
  guard(3, [&] { criterion_convergence(&torus_starts); });
  guard(4, [&] { criterion_rate(torus_starts); });
  guard(5, [&] { criterion_rigidity(); });
  guard(6, [&] { criterion_prescribed(); });
  guard(7, [&] { criterion_necessity(fixtures, samples); });
  guard(8, [&] { criterion_degenerate(); });
  guard(9, [&] { criterion_triangle_inverse(); });
  guard(10, [&] { criterion_potential(); });

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
