#include <array>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idcp/commands.hpp"

namespace {

void add_output_options(CLI::App* sub, idcp::OutputOptions& output) {
  sub->add_option("--out", output.out_dir, "directory for report.json and trajectory.csv");
  sub->add_flag("--svg", output.svg, "also write residual.svg (needs --out)");
  sub->add_flag("--json", output.json, "print the JSON report instead of the text summary");
}

void add_flow_options(CLI::App* sub, idcp::FlowCommand& cmd) {
  sub->add_option("problem", cmd.problem_path, "problem file")->required();
  sub->add_option("--dt", cmd.dt, "initial step size");
  sub->add_option("--t-max", cmd.t_max, "flow time budget");
  sub->add_option("--tol", cmd.tol, "residual tolerance");
  const std::map<std::string, idcp::FlowMethod> methods{
      {"euler", idcp::FlowMethod::explicit_euler},
      {"rk4", idcp::FlowMethod::rk4},
      {"newton-hybrid", idcp::FlowMethod::newton_hybrid}};
  sub->add_option("--method", cmd.method, "euler, rk4 or newton-hybrid")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  sub->add_option("--record-every", cmd.record_every, "sample the trajectory every k steps");
  add_output_options(sub, cmd.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inversive distance circle packing curvature flows"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "parse a problem file and summarize it");
  validate->add_option("problem", validate_path, "problem file")->required();

  idcp::FlowCommand flow_cmd;
  int flow_normalize = -1;
  CLI::App* flow = app.add_subcommand("flow", "run the curvature flow to the problem target");
  add_flow_options(flow, flow_cmd);
  flow->add_flag("--normalize{1},--no-normalize{0}", flow_normalize,
                 "pin the total of log radii during the flow");

  idcp::FlowCommand prescribe_cmd;
  prescribe_cmd.require_explicit_target = true;
  int prescribe_normalize = -1;
  CLI::App* prescribe =
      app.add_subcommand("prescribe", "flow toward the prescribed curvature of the problem");
  add_flow_options(prescribe, prescribe_cmd);
  prescribe->add_flag("--normalize{1},--no-normalize{0}", prescribe_normalize,
                      "pin the total of log radii during the flow");

  idcp::AdmissibleCommand adm_cmd;
  std::string adm_mode = "strict";
  CLI::App* admissible =
      app.add_subcommand("admissible", "check the half-space conditions at the problem target");
  admissible->add_option("problem", adm_cmd.problem_path, "problem file")->required();
  admissible->add_option("--mode", adm_mode, "strict or closure")
      ->check(CLI::IsMember({"strict", "closure"}));
  admissible->add_option("--max-subsets", adm_cmd.max_vertices,
                         "largest vertex count enumerated exhaustively");
  int adm_samples = 0;
  admissible->add_option("--sample-subsets", adm_samples, "check this many random subsets instead");
  admissible->add_option("--seed", adm_cmd.seed, "seed for sampled subsets");
  admissible->add_flag("--json", adm_cmd.json, "print the JSON report");

  idcp::TriangleCommand tri_cmd;
  std::vector<double> tri_weights;
  std::vector<double> tri_invert;
  CLI::App* triangle =
      app.add_subcommand("triangle", "inspect the angle range of a single packed triangle");
  triangle->add_option("weights", tri_weights, "inversive distances of the edges opposite each vertex")
      ->expected(3)
      ->required();
  triangle->add_option("--invert", tri_invert, "solve for radii with these angles")->expected(3);
  triangle->add_flag("--json", tri_cmd.json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return idcp::cmd_validate(validate_path, std::cout);
    if (flow->parsed()) {
      if (flow_normalize >= 0) flow_cmd.normalize = flow_normalize == 1;
      return idcp::cmd_flow(flow_cmd, std::cout);
    }
    if (prescribe->parsed()) {
      if (prescribe_normalize >= 0) prescribe_cmd.normalize = prescribe_normalize == 1;
      return idcp::cmd_flow(prescribe_cmd, std::cout);
    }
    if (admissible->parsed()) {
      adm_cmd.mode = adm_mode == "closure" ? idcp::MarginMode::closure : idcp::MarginMode::strict;
      if (adm_samples > 0) adm_cmd.sample_count = adm_samples;
      return idcp::cmd_admissible(adm_cmd, std::cout);
    }
    if (triangle->parsed()) {
      tri_cmd.weights = {tri_weights[0], tri_weights[1], tri_weights[2]};
      if (!tri_invert.empty()) tri_cmd.invert = idcp::Triple{tri_invert[0], tri_invert[1], tri_invert[2]};
      return idcp::cmd_triangle(tri_cmd, std::cout);
    }
  } catch (const idcp::Error& e) {
    std::cerr << "error: " << e.what() << " [" << idcp::errc_name(e.code()) << "]\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
