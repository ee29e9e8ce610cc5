// Problem files: a line-oriented description of a packing flow problem.
//
//   # comment
//   surface vertices <N>
//   surface face <i> <j> <k>          (one line per face)
//   weights default <I>               (optional, default 1)
//   weights edge <a> <b> <I>          (optional overrides)
//   radii default <r>                 (optional, default 1)
//   radii vertex <i> <r>              (optional overrides)
//   radii values <r_1> ... <r_N>      (alternative to default/vertex)
//   target constant                   (default)
//   target values <K_1> ... <K_N>
//   solver dt|t-max|tol <number>
//   solver method euler|rk4|newton-hybrid
//   solver normalize on|off
//   solver record-every <k>
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "idcp/flow.hpp"

namespace idcp {

struct ProblemFile {
  int vertex_count = 0;
  std::vector<std::array<int, 3>> faces;
  double default_weight = 1.0;
  std::vector<std::tuple<int, int, double>> edge_weights;
  double default_radius = 1.0;
  std::vector<std::pair<int, double>> vertex_radii;
  std::optional<std::vector<double>> radii_values;
  bool target_constant = true;
  std::optional<std::vector<double>> target_values;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<double> tol;
  std::optional<FlowMethod> method;
  std::optional<bool> normalize;
  std::optional<int> record_every;
};

ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem_file(const std::string& path);

// A parsed problem joined with the complex it describes. Explicit targets may
// miss the required total by up to 1e-6; the residual defect is spread
// uniformly and recorded in target_adjustment.
struct Problem {
  TriangulatedSurface surface;
  InversiveWeights weights;
  PackingMetric initial;
  Eigen::VectorXd target;
  double target_adjustment = 0;
  bool explicit_target = false;
  FlowConfig config;
};

Problem build_problem(const ProblemFile& file);

}  // namespace idcp
