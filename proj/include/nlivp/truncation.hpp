#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlivp/picard.hpp"
#include "nlivp/problem.hpp"
#include "nlivp/shooting.hpp"

namespace nlivp {

/// Finite N-component spec from an infinite family; out-of-range state reads
/// are substituted per the closure rule. The RHS must be a generator family.
ProblemSpec truncate(const ProblemSpec& infinite_spec, int n_components,
                     Closure closure);

/// Infinite extension of a finite system: component n beyond N reuses
/// (g_N, eta_N), and the seminorm schedule switches to n_p = N + p - 1.
/// Requires <eta_n, 1> != 1 for n = 1..N.
ProblemSpec pad_finite(const ProblemSpec& finite_spec);

enum class SolverMethod { picard, shoot };

struct StudyRow {
  int n_components = 0;
  std::optional<double> d;  // distance to the next-larger-N solution
  int iterations = 0;
  std::string status;  // "converged" or an error summary
};

struct StudyTable {
  std::vector<StudyRow> rows;
  /// False when d(N) increases somewhere along the tail.
  bool nonincreasing = true;
};

struct StudySettings {
  SolverMethod method = SolverMethod::picard;
  double tol = 1e-10;
  int max_iter = 200;
  ExecPolicy policy = default_policy();
};

/// Solve the truncated problem at each N in n_list (strictly increasing) and
/// report d(N) = max_p R_p(x_N - x_{N'}) over the configured p with
/// n_p <= N, where N' is the next larger truncation. Solver failures are
/// recorded per row and the study continues.
StudyTable convergence_study(const ProblemSpec& infinite_spec,
                             std::span<const int> n_list,
                             const StudySettings& settings);

}  // namespace nlivp
