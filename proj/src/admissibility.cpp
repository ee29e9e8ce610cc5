#include "idcp/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace idcp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosureSlack = 1e-9;

double subset_rhs(const TriangulatedSurface& surface, const InversiveWeights& weights,
                  const VertexSubset& subset) {
  double link_sum = 0;
  for (const LinkPair& pair : link_pairs(surface, subset))
    link_sum += kPi - lambda_clamp(weights.at(surface.edge_index(pair.edge.a, pair.edge.b)));
  return -link_sum + 2.0 * kPi * subcomplex_euler(surface, subset);
}

bool margin_ok(double margin, MarginMode mode) {
  return mode == MarginMode::strict ? margin > 0 : margin >= -kClosureSlack;
}

std::vector<int> mask_members(std::uint32_t mask) {
  std::vector<int> members;
  for (int v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) members.push_back(v + 1);
  return members;
}

void check_total(const TriangulatedSurface& surface, const Eigen::VectorXd& x) {
  if (x.size() != surface.vertex_count())
    fail(errc::invalid_config, "assignment size must match the vertex count");
  const double total = 2.0 * kPi * surface.euler_characteristic();
  if (std::abs(x.sum() - total) > 1e-9)
    fail(errc::bad_total_curvature, "assignment total differs from 2 pi chi(M) by " +
                                        std::to_string(x.sum() - total));
}

}  // namespace

HalfSpaceReport halfspace_margin(const TriangulatedSurface& surface,
                                 const InversiveWeights& weights, const VertexSubset& subset,
                                 const Eigen::VectorXd& x, MarginMode mode) {
  if (x.size() != surface.vertex_count())
    fail(errc::invalid_config, "assignment size must match the vertex count");
  HalfSpaceReport report;
  report.subset = subset.members();
  for (int v : subset.members()) report.lhs += x[v - 1];
  report.rhs = subset_rhs(surface, weights, subset);
  report.margin = report.lhs - report.rhs;
  report.satisfied = margin_ok(report.margin, mode);
  return report;
}

SubsetConditions::SubsetConditions(const TriangulatedSurface& surface,
                                   const InversiveWeights& weights, int max_vertices)
    : vertex_count_(surface.vertex_count()) {
  if (vertex_count_ > max_vertices)
    fail(errc::too_many_subsets, "surface has " + std::to_string(vertex_count_) +
                                     " vertices, exhaustive budget allows " +
                                     std::to_string(max_vertices));
  const std::uint32_t full = (1u << vertex_count_) - 1;
  rhs_.resize(full - 1);
  for (std::uint32_t mask = 1; mask < full; ++mask)
    rhs_[mask - 1] = subset_rhs(surface, weights, VertexSubset(surface, mask_members(mask)));
}

NecessityVerdict SubsetConditions::evaluate(const Eigen::VectorXd& x, MarginMode mode) const {
  NecessityVerdict verdict;
  verdict.holds = true;
  verdict.worst.margin = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << vertex_count_) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double lhs = 0;
    for (int v = 0; v < vertex_count_; ++v)
      if (mask & (1u << v)) lhs += x[v];
    const double margin = lhs - rhs_[mask - 1];
    ++verdict.subsets_checked;
    if (margin < verdict.worst.margin) {
      verdict.worst = {mask_members(mask), lhs, rhs_[mask - 1], margin, margin_ok(margin, mode)};
    }
    if (!margin_ok(margin, mode)) {
      verdict.holds = false;
      verdict.violations.push_back(
          {mask_members(mask), lhs, rhs_[mask - 1], margin, false});
    }
  }
  std::sort(verdict.violations.begin(), verdict.violations.end(),
            [](const HalfSpaceReport& a, const HalfSpaceReport& b) { return a.subset < b.subset; });
  return verdict;
}

NecessityVerdict check_necessary(const TriangulatedSurface& surface,
                                 const InversiveWeights& weights, const Eigen::VectorXd& x,
                                 MarginMode mode, int max_vertices) {
  check_total(surface, x);
  return SubsetConditions(surface, weights, max_vertices).evaluate(x, mode);
}

NecessityVerdict check_necessary_sampled(const TriangulatedSurface& surface,
                                         const InversiveWeights& weights, const Eigen::VectorXd& x,
                                         MarginMode mode, int sample_count, std::uint64_t seed) {
  check_total(surface, x);
  const int n = surface.vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);

  NecessityVerdict verdict;
  verdict.holds = true;
  verdict.exhaustive = false;
  verdict.worst.margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    std::vector<int> members;
    for (int v = 1; v <= n; ++v)
      if (coin(rng)) members.push_back(v);
    if (members.empty() || static_cast<int>(members.size()) == n) {
      --s;  // redraw; subsets must be proper
      continue;
    }
    const HalfSpaceReport report =
        halfspace_margin(surface, weights, VertexSubset(surface, members), x, mode);
    ++verdict.subsets_checked;
    if (report.margin < verdict.worst.margin) verdict.worst = report;
    if (!report.satisfied) {
      verdict.holds = false;
      verdict.violations.push_back(report);
    }
  }
  std::sort(verdict.violations.begin(), verdict.violations.end(),
            [](const HalfSpaceReport& a, const HalfSpaceReport& b) { return a.subset < b.subset; });
  verdict.violations.erase(
      std::unique(verdict.violations.begin(), verdict.violations.end(),
                  [](const HalfSpaceReport& a, const HalfSpaceReport& b) {
                    return a.subset == b.subset;
                  }),
      verdict.violations.end());
  return verdict;
}

NecessityVerdict constant_curvature_condition(const TriangulatedSurface& surface,
                                              const InversiveWeights& weights, int max_vertices) {
  const Eigen::VectorXd x =
      Eigen::VectorXd::Constant(surface.vertex_count(), average_curvature(surface));
  return check_necessary(surface, weights, x, MarginMode::strict, max_vertices);
}

DegenerateProbe degenerate_limit_probe(const TriangulatedSurface& surface,
                                       const InversiveWeights& weights, const VertexSubset& subset,
                                       const std::vector<double>& factors) {
  if (factors.empty()) fail(errc::invalid_config, "at least one shrink factor required");
  DegenerateProbe probe;
  for (double factor : factors) {
    if (!(factor > 0) || factor >= 1)
      fail(errc::invalid_config, "shrink factors must lie in (0, 1)");
    Eigen::VectorXd radii = Eigen::VectorXd::Ones(surface.vertex_count());
    for (int v : subset.members()) radii[v - 1] = factor;
    const Eigen::VectorXd curvature =
        curvature_extended(surface, weights, PackingMetric::from_radii(radii));
    double sum = 0;
    for (int v : subset.members()) sum += curvature[v - 1];
    probe.values.emplace_back(factor, sum);
  }

  probe.predicted = subset_rhs(surface, weights, subset);
  const auto [f_last, v_last] = probe.values.back();
  if (probe.values.size() >= 2) {
    // Fit v = v* + a sqrt(factor) through the last two samples. Angles whose
    // cosine ratio lands exactly on the clamp boundary approach their limit
    // like sqrt(factor); smooth cases converge faster and lose nothing here.
    const auto [f_prev, v_prev] = probe.values[probe.values.size() - 2];
    const double s_last = std::sqrt(f_last), s_prev = std::sqrt(f_prev);
    probe.extrapolated = v_last - (v_prev - v_last) * s_last / (s_prev - s_last);
  } else {
    probe.extrapolated = v_last;
  }
  return probe;
}

}  // namespace idcp
