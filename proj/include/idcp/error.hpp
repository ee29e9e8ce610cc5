// Error codes shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace idcp {

enum class errc {
  // surface construction
  invalid_face,
  duplicate_face,
  non_manifold_edge,
  dangling_vertex,
  empty_or_full_subset,
  // per-triangle geometry
  non_positive_radius,
  non_positive_length,
  non_finite_input,
  negative_weight,
  outside_delta,
  not_separated,
  target_outside_z,
  no_convergence,
  // surface-level geometry
  outside_omega,
  bad_total_curvature,
  // integration and solvers
  quadrature_failure,
  non_finite_state,
  insufficient_samples,
  not_converged,
  line_search_stall,
  too_many_subsets,
  // configuration and input files
  invalid_config,
  parse_error,
};

constexpr const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_face: return "invalid face";
    case errc::duplicate_face: return "duplicate face";
    case errc::non_manifold_edge: return "non-manifold edge";
    case errc::dangling_vertex: return "dangling vertex";
    case errc::empty_or_full_subset: return "empty or full subset";
    case errc::non_positive_radius: return "non-positive radius";
    case errc::non_positive_length: return "non-positive length";
    case errc::non_finite_input: return "non-finite input";
    case errc::negative_weight: return "negative weight";
    case errc::outside_delta: return "outside delta";
    case errc::not_separated: return "not separated";
    case errc::target_outside_z: return "target outside Z";
    case errc::no_convergence: return "no convergence";
    case errc::outside_omega: return "outside omega";
    case errc::bad_total_curvature: return "bad total curvature";
    case errc::quadrature_failure: return "quadrature failure";
    case errc::non_finite_state: return "non-finite state";
    case errc::insufficient_samples: return "insufficient samples";
    case errc::not_converged: return "not converged";
    case errc::line_search_stall: return "line search stall";
    case errc::too_many_subsets: return "too many subsets";
    case errc::invalid_config: return "invalid config";
    case errc::parse_error: return "parse error";
  }
  return "unknown error";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace idcp
