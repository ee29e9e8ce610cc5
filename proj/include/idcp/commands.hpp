// Command entry points shared by the CLI and the end-to-end tests. Each
// returns a process exit code: 0 on success (flow converged, conditions
// hold), 1 when the run completes with a negative outcome, while input and
// usage errors propagate as exceptions for the caller to turn into code 2.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "idcp/problem.hpp"
#include "idcp/report.hpp"

namespace idcp {

struct OutputOptions {
  std::string out_dir;  // when set: report.json and trajectory.csv land here
  bool svg = false;     // additionally write residual.svg
  bool json = false;    // print the JSON report instead of the text summary
};

struct FlowCommand {
  std::string problem_path;
  OutputOptions output;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<double> tol;
  std::optional<FlowMethod> method;
  std::optional<bool> normalize;
  std::optional<int> record_every;
  bool require_explicit_target = false;  // set by prescribe
};

struct AdmissibleCommand {
  std::string problem_path;
  MarginMode mode = MarginMode::strict;
  int max_vertices = 20;                  // exhaustive enumeration cap
  std::optional<int> sample_count;        // switch to random subsets
  std::uint64_t seed = 1;
  bool json = false;
};

struct TriangleCommand {
  Triple weights{0, 0, 0};
  std::optional<Triple> invert;  // angle targets
  bool json = false;
};

int cmd_validate(const std::string& problem_path, std::ostream& out);
int cmd_flow(const FlowCommand& cmd, std::ostream& out);
int cmd_admissible(const AdmissibleCommand& cmd, std::ostream& out);
int cmd_triangle(const TriangleCommand& cmd, std::ostream& out);

}  // namespace idcp
