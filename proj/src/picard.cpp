#include "nlivp/picard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "nlivp/errors.hpp"
#include "nlivp/functional.hpp"

namespace nlivp {

namespace {

constexpr double kIllConditionedTol = 1e-8;
constexpr double kDampingFloor = 1.0 / 16.0;

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void check_dimensions(const Trajectory& v, const ProblemSpec& spec) {
  if (v.components() != spec.truncation)
    throw InternalError("trajectory has " + std::to_string(v.components()) +
                        " components, expected N=" +
                        std::to_string(spec.truncation));
  if (v.node_count() != spec.grid->node_count())
    throw InternalError("trajectory grid does not match the problem grid");
}

}  // namespace

Trajectory integrate_rhs(const Trajectory& v, const ProblemSpec& spec,
                         ExecPolicy policy) {
  check_dimensions(v, spec);
  const std::size_t total = v.data().size();
  std::vector<double> rates(total);
  kernels::rhs_sweep(policy, *spec.rhs, spec.closure, spec.grid->nodes(),
                     v.data(), spec.truncation, rates);
  std::vector<double> integral(total);
  kernels::cumulative_trapezoid(policy, spec.grid->nodes(), rates,
                                spec.truncation, integral);
  return Trajectory(v.grid_ptr(), spec.truncation, std::move(integral));
}

Trajectory apply_T(const Trajectory& v, const ProblemSpec& spec,
                   ExecPolicy policy, std::vector<std::string>* warnings) {
  Trajectory integral = integrate_rhs(v, spec, policy);
  const int n_comp = spec.truncation;

  std::vector<double> constants(static_cast<std::size_t>(n_comp));
  for (int n = 1; n <= n_comp; ++n) {
    const StieltjesFunctional& alpha = spec.functional(n);
    double one = alpha.one_value();
    double denom = 1.0 - one;
    if (denom == 0.0)
      throw HypothesisViolation(
          "<alpha_n, 1> = 1 for component " + std::to_string(n) +
              "; the fixed-point operator is undefined",
          n);
    if (std::abs(denom) < kIllConditionedTol && warnings)
      warnings->push_back("component " + std::to_string(n) +
                          ": |1 - <alpha_n,1>| = " + compact(std::abs(denom)) +
                          " is below 1e-8; the correction constant is "
                          "ill-conditioned");
    constants[static_cast<std::size_t>(n - 1)] =
        apply(alpha, *spec.grid, integral.component(n)) / denom;
  }

  std::span<const double> base = integral.data();
  std::vector<double> shifted(base.size());
  const auto stride = static_cast<std::size_t>(n_comp);
  for (std::size_t i = 0; i < base.size(); ++i)
    shifted[i] = constants[i % stride] + base[i];
  return Trajectory(v.grid_ptr(), n_comp, std::move(shifted));
}

std::vector<double> nonlocal_residuals(const Trajectory& x,
                                       const ProblemSpec& spec) {
  std::vector<double> out(static_cast<std::size_t>(x.components()));
  for (int n = 1; n <= x.components(); ++n)
    out[static_cast<std::size_t>(n - 1)] = std::abs(
        x.value(0, n) - apply(spec.functional(n), *spec.grid, x.component(n)));
  return out;
}

SolveResult solve_picard(const ProblemSpec& spec,
                         const PicardSettings& settings,
                         const std::optional<Trajectory>& initial) {
  if (!(settings.tol > 0.0)) throw ConfigError("picard tol must be positive");
  if (settings.max_iter < 1)
    throw ConfigError("picard max_iter must be >= 1");
  if (!(settings.damping > 0.0) || settings.damping > 1.0)
    throw ConfigError("picard damping must lie in (0, 1]");

  Trajectory v = initial ? *initial
                         : Trajectory::zero(spec.grid, spec.truncation);
  check_dimensions(v, spec);

  const SeminormConfig metric = spec.seminorms.filtered(spec.truncation);
  if (metric.size() == 0)
    throw ConfigError("no seminorm entry with n_p <= N; cannot measure "
                      "convergence");

  SolveResult result(Trajectory::zero(spec.grid, spec.truncation));
  result.method = "picard";
  result.initial_guess = initial ? "user" : "zero";

  double lambda = settings.damping;
  double prev_residual = -1.0;
  int increases_in_a_row = 0;
  std::vector<double> residual_history;

  for (int iter = 1; iter <= settings.max_iter; ++iter) {
    // Conditioning warnings are identical every iteration; collect them once.
    Trajectory t_of_v = apply_T(v, spec, settings.policy,
                                iter == 1 ? &result.warnings : nullptr);
    Trajectory v_new = [&] {
      if (lambda == 1.0) return std::move(t_of_v);
      std::vector<double> mixed(v.data().size());
      kernels::blend(settings.policy, v.data(), t_of_v.data(), lambda, mixed);
      return Trajectory(v.grid_ptr(), spec.truncation, std::move(mixed));
    }();

    std::vector<SeminormValues> change =
        evaluate_seminorms(v_new.difference(v), metric, spec.t0);
    std::vector<SeminormValues> scale =
        evaluate_seminorms(v, metric, spec.t0);
    double residual = 0.0;
    for (std::size_t p = 0; p < change.size(); ++p)
      residual = std::max(residual, change[p].R / (1.0 + scale[p].R));
    residual_history.push_back(residual);
    result.history.push_back(IterationRecord{iter, residual, lambda});

    if (settings.observer) settings.observer(iter, v_new, residual);

    v = std::move(v_new);
    if (residual <= settings.tol) {
      result.trajectory = std::move(v);
      result.iterations = iter;
      result.final_residual = residual;
      result.nonlocal_residuals = nonlocal_residuals(result.trajectory, spec);
      result.seminorms =
          evaluate_seminorms(result.trajectory, metric, spec.t0);
      return result;
    }

    if (prev_residual >= 0.0 && residual > prev_residual)
      ++increases_in_a_row;
    else
      increases_in_a_row = 0;
    if (increases_in_a_row >= 2 && lambda > kDampingFloor) {
      lambda = std::max(0.5 * lambda, kDampingFloor);
      increases_in_a_row = 0;
    }
    prev_residual = residual;
  }

  throw NonConvergence(
      "picard iteration did not reach tol=" + compact(settings.tol) +
          " within " + std::to_string(settings.max_iter) +
          " iterations (last residual " + compact(residual_history.back()) +
          ")",
      residual_history);
}

}  // namespace nlivp
