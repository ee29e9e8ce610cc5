// Half-space conditions a curvature assignment must satisfy to be realized.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "idcp/curvature.hpp"

namespace idcp {

enum class MarginMode { strict, closure };

// One half-space condition: sum of x over A against the bound built from the
// link of A and the Euler characteristic of its subcomplex.
struct HalfSpaceReport {
  std::vector<int> subset;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // lhs - rhs
  bool satisfied = false;
};

HalfSpaceReport halfspace_margin(const TriangulatedSurface& surface,
                                 const InversiveWeights& weights, const VertexSubset& subset,
                                 const Eigen::VectorXd& x, MarginMode mode = MarginMode::strict);

struct NecessityVerdict {
  bool holds = false;
  std::uint64_t subsets_checked = 0;
  bool exhaustive = true;
  std::vector<HalfSpaceReport> violations;  // lexicographic by subset
  HalfSpaceReport worst;                    // smallest margin over all checked subsets
};

// Right-hand sides of every half-space condition of a fixture, precomputed so
// many assignments can be screened cheaply. Exhaustive enumeration is capped
// at max_vertices (2^N - 2 subsets).
class SubsetConditions {
 public:
  SubsetConditions(const TriangulatedSurface& surface, const InversiveWeights& weights,
                   int max_vertices = 20);

  NecessityVerdict evaluate(const Eigen::VectorXd& x, MarginMode mode) const;
  double rhs_of_mask(std::uint32_t mask) const { return rhs_[mask - 1]; }

 private:
  int vertex_count_;
  std::vector<double> rhs_;  // indexed by subset bitmask - 1
};

// Checks every half-space condition against x after verifying that x has the
// correct total curvature. All conditions hold for any realized curvature;
// strict margins are necessary for realization inside Omega.
NecessityVerdict check_necessary(const TriangulatedSurface& surface,
                                 const InversiveWeights& weights, const Eigen::VectorXd& x,
                                 MarginMode mode = MarginMode::strict, int max_vertices = 20);

// Random-subset variant for surfaces too large to enumerate; the verdict is
// marked non-exhaustive.
NecessityVerdict check_necessary_sampled(const TriangulatedSurface& surface,
                                         const InversiveWeights& weights, const Eigen::VectorXd& x,
                                         MarginMode mode, int sample_count, std::uint64_t seed);

// The conditions evaluated at the constant assignment 2 pi chi(M)/N. This is
// necessary for a constant curvature packing to exist, not sufficient.
NecessityVerdict constant_curvature_condition(const TriangulatedSurface& surface,
                                              const InversiveWeights& weights,
                                              int max_vertices = 20);

// Shrinks the radii over A through the given factors and tracks the total
// curvature over A against its closed-form limit. The extrapolation removes
// the leading sqrt(factor) deviation, which dominates when a link weight
// sits exactly at 1.
struct DegenerateProbe {
  std::vector<std::pair<double, double>> values;  // (factor, sum over A of curvature)
  double extrapolated = 0;
  double predicted = 0;
};

DegenerateProbe degenerate_limit_probe(const TriangulatedSurface& surface,
                                       const InversiveWeights& weights, const VertexSubset& subset,
                                       const std::vector<double>& factors);

}  // namespace idcp
