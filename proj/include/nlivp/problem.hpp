#pragma once

#include <memory>
#include <vector>

#include "nlivp/envelope.hpp"
#include "nlivp/functional.hpp"
#include "nlivp/grid.hpp"
#include "nlivp/rhs.hpp"
#include "nlivp/seminorms.hpp"
#include "nlivp/state.hpp"

namespace nlivp {

/// The full problem: RHS family, nonlocal functionals, horizon and grid,
/// truncation level, growth envelope, and the seminorm schedule. Immutable
/// in use; built by the config loader, the builtin registry, or directly by
/// tests.
struct ProblemSpec {
  double t0 = 0.0;
  std::shared_ptr<const Grid> grid;
  std::shared_ptr<const RhsFamily> rhs;
  std::shared_ptr<const FunctionalFamily> functional_family;
  /// alpha_1..alpha_count materialized from the family (count >= truncation
  /// and >= the largest configured n_p).
  std::vector<StieltjesFunctional> functionals;
  int truncation = 1;
  Closure closure = Closure::zero;
  std::shared_ptr<const GrowthEnvelope> envelope;  // may be null
  SeminormConfig seminorms;

  const StieltjesFunctional& functional(int n) const;
  int materialized_functionals() const {
    return static_cast<int>(functionals.size());
  }

  /// Checks the structural invariants: t0 < t_max and on the grid, the
  /// truncation level vs. the RHS family, functional support on grid nodes,
  /// and the seminorm schedule.
  void validate() const;
};

/// Materialize alpha_1..alpha_count from a family.
std::vector<StieltjesFunctional> materialize_functionals(
    const FunctionalFamily& family, int count);

}  // namespace nlivp
