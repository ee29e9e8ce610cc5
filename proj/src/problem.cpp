#include "idcp/problem.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace idcp {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& message) {
  fail(errc::parse_error, "line " + std::to_string(line) + ": " + message);
}

double to_number(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    parse_fail(line, "expected a number, got '" + token + "'");
  }
}

int to_integer(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got '" + token + "'");
  }
}

}  // namespace

ProblemFile parse_problem(std::istream& in) {
  ProblemFile file;
  bool saw_vertices = false, saw_weight_default = false, saw_radius_default = false;
  bool saw_target = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string token; tokens >> token;) parts.push_back(token);
    if (parts.empty()) continue;
    if (parts.size() < 2) parse_fail(line_no, "expected '<section> <key> ...'");
    const std::string& section = parts[0];
    const std::string& key = parts[1];
    const auto arg_count = parts.size() - 2;
    const auto need = [&](std::size_t count) {
      if (arg_count != count)
        parse_fail(line_no, section + " " + key + " takes " + std::to_string(count) +
                                " arguments, got " + std::to_string(arg_count));
    };

    if (section == "surface" && key == "vertices") {
      need(1);
      if (saw_vertices) parse_fail(line_no, "vertex count already set");
      file.vertex_count = to_integer(parts[2], line_no);
      saw_vertices = true;
    } else if (section == "surface" && key == "face") {
      need(3);
      file.faces.push_back({to_integer(parts[2], line_no), to_integer(parts[3], line_no),
                            to_integer(parts[4], line_no)});
    } else if (section == "weights" && key == "default") {
      need(1);
      if (saw_weight_default) parse_fail(line_no, "weight default already set");
      file.default_weight = to_number(parts[2], line_no);
      saw_weight_default = true;
    } else if (section == "weights" && key == "edge") {
      need(3);
      file.edge_weights.emplace_back(to_integer(parts[2], line_no), to_integer(parts[3], line_no),
                                     to_number(parts[4], line_no));
    } else if (section == "radii" && key == "default") {
      need(1);
      if (saw_radius_default) parse_fail(line_no, "radius default already set");
      if (file.radii_values) parse_fail(line_no, "radii values and radii default are exclusive");
      file.default_radius = to_number(parts[2], line_no);
      saw_radius_default = true;
    } else if (section == "radii" && key == "vertex") {
      need(2);
      if (file.radii_values) parse_fail(line_no, "radii values and radii vertex are exclusive");
      file.vertex_radii.emplace_back(to_integer(parts[2], line_no), to_number(parts[3], line_no));
    } else if (section == "radii" && key == "values") {
      if (saw_radius_default || !file.vertex_radii.empty())
        parse_fail(line_no, "radii values and radii default/vertex are exclusive");
      if (file.radii_values) parse_fail(line_no, "radii values already set");
      std::vector<double> values;
      for (std::size_t i = 2; i < parts.size(); ++i) values.push_back(to_number(parts[i], line_no));
      file.radii_values = std::move(values);
    } else if (section == "target" && key == "constant") {
      need(0);
      if (saw_target) parse_fail(line_no, "target already set");
      file.target_constant = true;
      saw_target = true;
    } else if (section == "target" && key == "values") {
      if (saw_target) parse_fail(line_no, "target already set");
      std::vector<double> values;
      for (std::size_t i = 2; i < parts.size(); ++i) values.push_back(to_number(parts[i], line_no));
      file.target_values = std::move(values);
      file.target_constant = false;
      saw_target = true;
    } else if (section == "solver" && key == "dt") {
      need(1);
      file.dt = to_number(parts[2], line_no);
    } else if (section == "solver" && key == "t-max") {
      need(1);
      file.t_max = to_number(parts[2], line_no);
    } else if (section == "solver" && key == "tol") {
      need(1);
      file.tol = to_number(parts[2], line_no);
    } else if (section == "solver" && key == "method") {
      need(1);
      if (parts[2] == "euler") file.method = FlowMethod::explicit_euler;
      else if (parts[2] == "rk4") file.method = FlowMethod::rk4;
      else if (parts[2] == "newton-hybrid") file.method = FlowMethod::newton_hybrid;
      else parse_fail(line_no, "unknown method '" + parts[2] + "'");
    } else if (section == "solver" && key == "normalize") {
      need(1);
      if (parts[2] == "on") file.normalize = true;
      else if (parts[2] == "off") file.normalize = false;
      else parse_fail(line_no, "normalize takes on or off");
    } else if (section == "solver" && key == "record-every") {
      need(1);
      file.record_every = to_integer(parts[2], line_no);
    } else {
      parse_fail(line_no, "unknown directive '" + section + " " + key + "'");
    }
  }
  if (!saw_vertices) fail(errc::parse_error, "missing 'surface vertices' directive");
  if (file.faces.empty()) fail(errc::parse_error, "problem lists no faces");
  return file;
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  return parse_problem(in);
}

Problem build_problem(const ProblemFile& file) {
  TriangulatedSurface surface(file.vertex_count, file.faces);
  const int n = surface.vertex_count();

  Eigen::VectorXd weight_values =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(surface.edges().size()),
                                file.default_weight);
  std::set<int> seen_edges;
  for (const auto& [a, b, value] : file.edge_weights) {
    const int e = surface.edge_index(a, b);
    if (!seen_edges.insert(e).second)
      fail(errc::parse_error, "weight for edge {" + std::to_string(a) + ", " + std::to_string(b) +
                                  "} set twice");
    weight_values[e] = value;
  }
  InversiveWeights weights = InversiveWeights::from_values(surface, weight_values);

  Eigen::VectorXd radii;
  if (file.radii_values) {
    if (static_cast<int>(file.radii_values->size()) != n)
      fail(errc::parse_error, "radii values lists " + std::to_string(file.radii_values->size()) +
                                  " entries for " + std::to_string(n) + " vertices");
    radii = Eigen::Map<const Eigen::VectorXd>(file.radii_values->data(), n);
  } else {
    radii = Eigen::VectorXd::Constant(n, file.default_radius);
    std::set<int> seen_vertices;
    for (const auto& [v, value] : file.vertex_radii) {
      if (v < 1 || v > n) fail(errc::parse_error, "radius vertex " + std::to_string(v) + " out of range");
      if (!seen_vertices.insert(v).second)
        fail(errc::parse_error, "radius for vertex " + std::to_string(v) + " set twice");
      radii[v - 1] = value;
    }
  }
  PackingMetric initial = PackingMetric::from_radii(radii);

  Eigen::VectorXd target;
  double adjustment = 0;
  if (file.target_values) {
    if (static_cast<int>(file.target_values->size()) != n)
      fail(errc::parse_error, "target values lists " + std::to_string(file.target_values->size()) +
                                  " entries for " + std::to_string(n) + " vertices");
    target = Eigen::Map<const Eigen::VectorXd>(file.target_values->data(), n);
    const double total = 2.0 * std::numbers::pi * surface.euler_characteristic();
    const double defect = target.sum() - total;
    if (std::abs(defect) > 1e-6)
      fail(errc::bad_total_curvature,
           "explicit target total differs from 2 pi chi(M) by " + std::to_string(defect));
    adjustment = -defect / n;
    target.array() += adjustment;
  } else {
    target = CurvatureTarget::constant(surface).values;
  }

  FlowConfig config;
  config.target = target;
  if (file.dt) config.dt = *file.dt;
  if (file.t_max) config.t_max = *file.t_max;
  if (file.tol) config.residual_tol = *file.tol;
  if (file.method) config.method = *file.method;
  if (file.normalize) config.normalize = *file.normalize;
  if (file.record_every) config.record_every = *file.record_every;

  return Problem{std::move(surface), std::move(weights),    std::move(initial),
                 std::move(target),  adjustment,            file.target_values.has_value(),
                 std::move(config)};
}

}  // namespace idcp
