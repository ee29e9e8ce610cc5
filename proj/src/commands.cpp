#include "idcp/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace idcp {

namespace {

using ordered_json = nlohmann::ordered_json;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(now - start).count();
}

Eigen::VectorXd unit_product(const Eigen::VectorXd& u) {
  return (u.array() - u.mean()).exp();
}

std::string status_name(FlowStatus status) {
  switch (status) {
    case FlowStatus::converged: return "converged";
    case FlowStatus::max_time_reached: return "max-time-reached";
    case FlowStatus::diverged: return "diverged";
  }
  return "unknown";
}

void write_outputs(const OutputOptions& output, const RunReport& report,
                   const FlowTrajectory* trajectory) {
  if (output.out_dir.empty()) return;
  const std::filesystem::path dir(output.out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream file(dir / "report.json");
    if (!file) fail(errc::invalid_config, "cannot write to '" + output.out_dir + "'");
    write_report_json(file, report);
  }
  if (trajectory) {
    std::ofstream file(dir / "trajectory.csv");
    write_trajectory_csv(file, *trajectory);
    if (output.svg) {
      std::ofstream plot(dir / "residual.svg");
      write_residual_svg(plot, *trajectory);
    }
  }
}

}  // namespace

int cmd_validate(const std::string& problem_path, std::ostream& out) {
  const Problem problem = build_problem(parse_problem_file(problem_path));
  const TriangulatedSurface& surface = problem.surface;

  const Eigen::VectorXd curvature =
      curvature_extended(surface, problem.weights, problem.initial);
  const double residual = (curvature - problem.target).lpNorm<Eigen::Infinity>();
  const Eigen::VectorXd& w = problem.weights.values();

  out << "surface             " << surface.vertex_count() << " vertices, "
      << surface.edges().size() << " edges, " << surface.faces().size() << " faces\n";
  out << "euler characteristic " << surface.euler_characteristic() << '\n';
  out << "weights             [" << format_g17(w.minCoeff()) << ", " << format_g17(w.maxCoeff())
      << "], " << (w.array() > 1.0).count() << " separated edges\n";
  out << "target              " << (problem.explicit_target ? "prescribed" : "constant")
      << ", total " << format_g17(problem.target.sum()) << '\n';
  if (problem.target_adjustment != 0)
    out << "target adjustment   " << format_g17(problem.target_adjustment) << '\n';
  out << "initial residual    " << format_g17(residual) << '\n';
  out << "initial in omega    "
      << (in_omega(surface, problem.weights, problem.initial) ? "yes" : "no") << '\n';
  out << "gauss-bonnet defect " << format_g17(gauss_bonnet_defect(surface, curvature)) << '\n';
  return 0;
}

int cmd_flow(const FlowCommand& cmd, std::ostream& out) {
  Problem problem = build_problem(parse_problem_file(cmd.problem_path));
  if (cmd.require_explicit_target && !problem.explicit_target)
    fail(errc::invalid_config, "prescribe requires 'target values' in the problem file");

  FlowConfig config = problem.config;
  if (cmd.dt) config.dt = *cmd.dt;
  if (cmd.t_max) config.t_max = *cmd.t_max;
  if (cmd.tol) config.residual_tol = *cmd.tol;
  if (cmd.method) config.method = *cmd.method;
  if (cmd.normalize) config.normalize = *cmd.normalize;
  if (cmd.record_every) config.record_every = *cmd.record_every;
  config.record_potential = true;

  const auto start = std::chrono::steady_clock::now();
  const FlowTrajectory trajectory = run_flow(problem.surface, problem.weights, problem.initial, config);
  const double wall = elapsed_ms(start);

  const Eigen::VectorXd radii = unit_product(trajectory.final_u);
  const PackingMetric final_metric = PackingMetric::from_radii(radii);
  const Eigen::VectorXd curvature =
      curvature_extended(problem.surface, problem.weights, final_metric);

  RunReport report;
  report.command = cmd.require_explicit_target ? "prescribe" : "flow";
  report.status = status_name(trajectory.status);
  report.radii = radii;
  report.curvature = curvature;
  report.target = problem.target;
  report.residual = (curvature - problem.target).lpNorm<Eigen::Infinity>();
  report.gauss_bonnet_defect = gauss_bonnet_defect(problem.surface, curvature);
  report.in_omega = in_omega(problem.surface, problem.weights, final_metric);
  report.final_time = trajectory.final_time;
  report.steps = trajectory.steps;
  report.dt_halvings = trajectory.dt_halvings;
  report.target_adjustment = problem.target_adjustment;
  report.wall_time_ms = wall;
  if (trajectory.status == FlowStatus::converged) {
    try {
      report.rate = estimate_rate(trajectory);
    } catch (const Error&) {
    }
  }

  if (cmd.output.json) write_report_json(out, report);
  else write_report_text(out, report);
  write_outputs(cmd.output, report, &trajectory);
  return trajectory.status == FlowStatus::converged ? 0 : 1;
}

int cmd_admissible(const AdmissibleCommand& cmd, std::ostream& out) {
  const Problem problem = build_problem(parse_problem_file(cmd.problem_path));

  const auto start = std::chrono::steady_clock::now();
  const NecessityVerdict verdict =
      cmd.sample_count
          ? check_necessary_sampled(problem.surface, problem.weights, problem.target, cmd.mode,
                                    *cmd.sample_count, cmd.seed)
          : check_necessary(problem.surface, problem.weights, problem.target, cmd.mode,
                            cmd.max_vertices);

  RunReport report;
  report.command = "admissible";
  report.status = verdict.holds ? "conditions-hold" : "conditions-violated";
  report.target = problem.target;
  report.target_adjustment = problem.target_adjustment;
  report.admissibility = verdict;
  report.wall_time_ms = elapsed_ms(start);

  if (cmd.json) write_report_json(out, report);
  else write_report_text(out, report);
  return verdict.holds ? 0 : 1;
}

int cmd_triangle(const TriangleCommand& cmd, std::ostream& out) {
  const Triple caps = z_angle_caps(cmd.weights);
  const TriangleConfig sample = delta_interior_point(cmd.weights);
  const Triple sample_lengths = triangle_lengths(sample);
  const Triple sample_angles = generalized_angles(sample_lengths);

  std::optional<Triple> inverted;
  std::optional<Triple> inverted_angles;
  std::optional<Triple> invert_target = cmd.invert;
  if (invert_target) {
    // Angle targets typed at the prompt carry only a few digits of pi; spread
    // a small total defect evenly before demanding an exact sum.
    const double defect =
        (*invert_target)[0] + (*invert_target)[1] + (*invert_target)[2] - std::numbers::pi;
    if (std::abs(defect) <= 1e-6)
      for (double& t : *invert_target) t -= defect / 3;
    inverted = invert_angle_map(*invert_target, cmd.weights);
    inverted_angles =
        generalized_angles(triangle_lengths(TriangleConfig{*inverted, cmd.weights}));
  }

  if (cmd.json) {
    ordered_json j;
    j["weights"] = cmd.weights;
    j["angle_caps"] = caps;
    j["cap_total"] = caps[0] + caps[1] + caps[2];
    j["sample"] = {{"radii", sample.radii},
                   {"lengths", sample_lengths},
                   {"angles", sample_angles}};
    if (inverted) {
      j["invert"] = {{"target", *invert_target},
                     {"radii", *inverted},
                     {"angles", *inverted_angles}};
    }
    out << j.dump(2) << '\n';
  } else {
    const auto triple = [&](const Triple& v) {
      return format_g17(v[0]) + " " + format_g17(v[1]) + " " + format_g17(v[2]);
    };
    out << "weights       " << triple(cmd.weights) << '\n';
    out << "angle caps    " << triple(caps) << "  (total " << format_g17(caps[0] + caps[1] + caps[2])
        << ", range nonempty: " << (caps[0] + caps[1] + caps[2] > std::numbers::pi ? "yes" : "no")
        << ")\n";
    out << "sample radii  " << triple(sample.radii) << '\n';
    out << "sample angles " << triple(sample_angles) << '\n';
    if (inverted) {
      out << "invert target " << triple(*invert_target) << '\n';
      out << "invert radii  " << triple(*inverted) << '\n';
      out << "invert angles " << triple(*inverted_angles) << '\n';
    }
  }
  return 0;
}

}  // namespace idcp
