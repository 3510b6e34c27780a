#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlivp/kernels.hpp"
#include "nlivp/problem.hpp"
#include "nlivp/seminorms.hpp"
#include "nlivp/trajectory.hpp"

namespace nlivp {

struct PicardSettings {
  double tol = 1e-10;   // relative-change threshold in the R_p metric
  int max_iter = 200;
  double damping = 1.0;  // lambda in (0, 1]
  ExecPolicy policy = default_policy();
  /// Test hook: called after each iterate with (iteration, v_new, residual).
  std::function<void(int, const Trajectory&, double)> observer;
};

struct IterationRecord {
  int iteration = 0;
  double residual = 0.0;
  double damping = 1.0;
};

struct SolveResult {
  explicit SolveResult(Trajectory t) : trajectory(std::move(t)) {}

  Trajectory trajectory;
  int iterations = 0;
  double final_residual = 0.0;
  /// |x_n(0) - <alpha_n, x_n|[0,t0]>| per component.
  std::vector<double> nonlocal_residuals;
  std::vector<SeminormValues> seminorms;
  std::vector<IterationRecord> history;
  std::vector<std::string> warnings;
  std::string method;
  std::string initial_guess;  // recorded so runs are reproducible
};

/// R(v): componentwise cumulative trapezoid of s -> f(s, v(s)); zero at t=0.
Trajectory integrate_rhs(const Trajectory& v, const ProblemSpec& spec,
                         ExecPolicy policy = default_policy());

/// T(v)_n(t) = (1 - <alpha_n,1>)^{-1} <alpha_n, R(v)_n|[0,t0]> + R(v)_n(t).
/// Throws HypothesisViolation when some <alpha_n,1> equals 1 exactly;
/// appends a warning when |1 - <alpha_n,1>| < 1e-8.
Trajectory apply_T(const Trajectory& v, const ProblemSpec& spec,
                   ExecPolicy policy = default_policy(),
                   std::vector<std::string>* warnings = nullptr);

/// Damped Picard iteration v <- (1-lambda) v + lambda T(v), stopped when
/// max_p R_p(v_new - v_old) / (1 + R_p(v_old)) <= tol. On two consecutive
/// residual increases the damping is halved (floor 1/16). Throws
/// NonConvergence with the residual history when max_iter is reached.
SolveResult solve_picard(const ProblemSpec& spec, const PicardSettings& settings,
                         const std::optional<Trajectory>& initial = {});

/// Per-component nonlocal residuals |x_n(0) - <alpha_n, x_n|[0,t0]>|.
std::vector<double> nonlocal_residuals(const Trajectory& x,
                                       const ProblemSpec& spec);

}  // namespace nlivp
