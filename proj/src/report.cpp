#include "idcp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace idcp {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json array = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) array.push_back(v[i]);
  return array;
}

ordered_json halfspace_json(const HalfSpaceReport& report) {
  ordered_json j;
  j["subset"] = report.subset;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  j["satisfied"] = report.satisfied;
  return j;
}

}  // namespace

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory) {
  const Eigen::Index n = trajectory.samples.empty() ? 0 : trajectory.samples.front().u.size();
  out << "t,residual,in_omega,potential";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",u_" << i;
  for (Eigen::Index i = 1; i <= n; ++i) out << ",K_" << i;
  out << '\n';
  for (const FlowSample& sample : trajectory.samples) {
    out << format_g17(sample.t) << ',' << format_g17(sample.residual) << ','
        << (sample.in_omega ? 1 : 0) << ','
        << (sample.potential ? format_g17(*sample.potential) : "nan");
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_g17(sample.u[i]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_g17(sample.curvature[i]);
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const RunReport& report) {
  ordered_json j;
  j["command"] = report.command;
  j["status"] = report.status;
  j["radii"] = vector_json(report.radii);
  j["curvature"] = vector_json(report.curvature);
  j["target"] = vector_json(report.target);
  j["residual"] = report.residual;
  j["gauss_bonnet_defect"] = report.gauss_bonnet_defect;
  j["in_omega"] = report.in_omega;
  j["final_time"] = report.final_time;
  j["steps"] = report.steps;
  j["dt_halvings"] = report.dt_halvings;
  j["target_adjustment"] = report.target_adjustment;
  if (report.rate) {
    j["rate"] = {{"lambda", report.rate->lambda},
                 {"r_squared", report.rate->r_squared},
                 {"samples_used", report.rate->samples_used}};
  }
  if (report.admissibility) {
    const NecessityVerdict& verdict = *report.admissibility;
    ordered_json a;
    a["holds"] = verdict.holds;
    a["subsets_checked"] = verdict.subsets_checked;
    a["exhaustive"] = verdict.exhaustive;
    a["worst"] = halfspace_json(verdict.worst);
    a["violation_count"] = verdict.violations.size();
    ordered_json listed = ordered_json::array();
    const std::size_t shown = std::min<std::size_t>(verdict.violations.size(), 16);
    for (std::size_t i = 0; i < shown; ++i) listed.push_back(halfspace_json(verdict.violations[i]));
    a["violations"] = std::move(listed);
    j["admissibility"] = std::move(a);
  }
  out << j.dump(2) << '\n';
}

void write_report_text(std::ostream& out, const RunReport& report) {
  out << report.command << ": " << report.status << '\n';
  if (report.radii.size() > 0) {
    out << "  residual            " << format_g17(report.residual) << '\n';
    out << "  gauss-bonnet defect " << format_g17(report.gauss_bonnet_defect) << '\n';
    out << "  in omega            " << (report.in_omega ? "yes" : "no") << '\n';
    out << "  flow time           " << format_g17(report.final_time) << '\n';
    out << "  steps               " << report.steps << '\n';
    out << "  dt halvings         " << report.dt_halvings << '\n';
  }
  if (report.target_adjustment != 0)
    out << "  target adjustment   " << format_g17(report.target_adjustment) << '\n';
  if (report.rate) {
    out << "  decay rate          " << format_g17(report.rate->lambda) << "  (r^2 "
        << format_g17(report.rate->r_squared) << ", " << report.rate->samples_used
        << " samples)\n";
  }
  if (report.admissibility) {
    const NecessityVerdict& verdict = *report.admissibility;
    out << "  conditions          " << (verdict.holds ? "hold" : "violated") << " over "
        << verdict.subsets_checked << (verdict.exhaustive ? " subsets" : " sampled subsets")
        << '\n';
    out << "  worst margin        " << format_g17(verdict.worst.margin) << "  (subset {";
    for (std::size_t i = 0; i < verdict.worst.subset.size(); ++i)
      out << (i ? ", " : "") << verdict.worst.subset[i];
    out << "})\n";
    if (!verdict.violations.empty())
      out << "  violations          " << verdict.violations.size() << '\n';
  }
  if (report.radii.size() > 0) {
    out << "  radii              ";
    for (Eigen::Index i = 0; i < report.radii.size(); ++i)
      out << ' ' << format_g17(report.radii[i]);
    out << '\n';
    out << "  curvature          ";
    for (Eigen::Index i = 0; i < report.curvature.size(); ++i)
      out << ' ' << format_g17(report.curvature[i]);
    out << '\n';
  }
  out << "  wall time           " << format_g17(report.wall_time_ms) << " ms\n";
}

void write_residual_svg(std::ostream& out, const FlowTrajectory& trajectory) {
  constexpr double width = 640, height = 360, pad = 48;
  double t_max = 0, log_min = 0, log_max = -300;
  std::vector<std::pair<double, double>> points;
  for (const FlowSample& sample : trajectory.samples) {
    if (!(sample.residual > 0) || !std::isfinite(sample.residual)) continue;
    const double lg = std::max(std::log10(sample.residual), -16.0);
    points.emplace_back(sample.t, lg);
    t_max = std::max(t_max, sample.t);
    log_min = std::min(log_min, lg);
    log_max = std::max(log_max, lg);
  }
  if (t_max <= 0) t_max = 1;
  if (log_max <= log_min) log_max = log_min + 1;

  const auto px = [&](double t) { return pad + (width - 2 * pad) * t / t_max; };
  const auto py = [&](double lg) {
    return height - pad - (height - 2 * pad) * (lg - log_min) / (log_max - log_min);
  };
  char buffer[64];
  const auto coord = [&](double v) {
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return std::string(buffer);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << coord(pad) << "\" y1=\"" << coord(height - pad) << "\" x2=\""
      << coord(width - pad) << "\" y2=\"" << coord(height - pad)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << coord(pad) << "\" y1=\"" << coord(pad) << "\" x2=\"" << coord(pad)
      << "\" y2=\"" << coord(height - pad) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << coord(width / 2) << "\" y=\"" << coord(height - 12)
      << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";
  out << "  <text x=\"16\" y=\"" << coord(height / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << coord(height / 2) << ")\">log10 residual</text>\n";
  if (!points.empty()) {
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) out << ' ';
      out << coord(px(points[i].first)) << ',' << coord(py(points[i].second));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace idcp
