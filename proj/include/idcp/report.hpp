// Serialization of run results: text summaries, JSON reports, trajectory CSV
// and a residual plot. File output is byte-deterministic for fixed inputs, so
// wall-clock timing appears only in the text summary.
#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "idcp/admissibility.hpp"
#include "idcp/flow.hpp"

namespace idcp {

// Shortest decimal form that round-trips a double.
std::string format_g17(double value);

struct RunReport {
  std::string command;
  std::string status;
  Eigen::VectorXd radii;  // normalized to unit product
  Eigen::VectorXd curvature;
  Eigen::VectorXd target;
  double residual = 0;
  double gauss_bonnet_defect = 0;
  bool in_omega = false;
  double final_time = 0;
  long steps = 0;
  int dt_halvings = 0;
  double target_adjustment = 0;
  std::optional<RateEstimate> rate;
  std::optional<NecessityVerdict> admissibility;
  double wall_time_ms = 0;
};

// Columns: t, residual, in_omega, potential, u_1..u_N, K_1..K_N. Samples
// without a recorded potential print nan.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory);

void write_report_json(std::ostream& out, const RunReport& report);
void write_report_text(std::ostream& out, const RunReport& report);

// log10 residual against flow time as a standalone SVG polyline.
void write_residual_svg(std::ostream& out, const FlowTrajectory& trajectory);

}  // namespace idcp
