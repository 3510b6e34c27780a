#include "nlivp/shooting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "nlivp/errors.hpp"
#include "nlivp/functional.hpp"
#include "nlivp/linalg.hpp"

namespace nlivp {

namespace {

constexpr double kDampingFloor = 1.0 / 16.0;

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// <alpha_n, (x)_n|[0,t0]> for n = 1..N.
std::vector<double> functional_values(const Trajectory& x,
                                      const ProblemSpec& spec) {
  std::vector<double> out(static_cast<std::size_t>(x.components()));
  for (int n = 1; n <= x.components(); ++n)
    out[static_cast<std::size_t>(n - 1)] =
        apply(spec.functional(n), *spec.grid, x.component(n));
  return out;
}

void check_hypothesis(const ProblemSpec& spec) {
  for (int n = 1; n <= spec.truncation; ++n) {
    if (spec.functional(n).one_value() == 1.0)
      throw HypothesisViolation(
          "<alpha_n, 1> = 1 for component " + std::to_string(n), n);
  }
}

double inf_norm(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

}  // namespace

Trajectory integrate_ivp(std::span<const double> c, const ProblemSpec& spec,
                         ExecPolicy policy) {
  if (static_cast<int>(c.size()) != spec.truncation)
    throw IndexError("initial vector has length " + std::to_string(c.size()) +
                     ", expected N=" + std::to_string(spec.truncation));
  std::vector<double> values(spec.grid->node_count() * c.size());
  kernels::rk4_integrate(policy, *spec.rhs, spec.closure, spec.grid->nodes(),
                         c, values);
  return Trajectory(spec.grid, spec.truncation, std::move(values));
}

ShootResidual shoot_residual(std::span<const double> c,
                             const ProblemSpec& spec, ExecPolicy policy) {
  Trajectory x = integrate_ivp(c, spec, policy);
  ShootResidual out;
  out.c.assign(c.begin(), c.end());
  out.F = functional_values(x, spec);
  for (std::size_t i = 0; i < out.F.size(); ++i) out.F[i] = c[i] - out.F[i];
  return out;
}

SolveResult solve_shooting(const ProblemSpec& spec,
                           const ShootingSettings& settings) {
  if (!(settings.tol > 0.0)) throw ConfigError("shooting tol must be positive");
  if (settings.max_iter < 1)
    throw ConfigError("shooting max_iter must be >= 1");
  check_hypothesis(spec);

  const int n = spec.truncation;
  const auto un = static_cast<std::size_t>(n);
  const bool use_newton =
      n <= settings.newton_max_dim && !settings.disable_newton;

  SolveResult result(Trajectory::zero(spec.grid, n));
  result.method = "shoot";
  result.initial_guess = "zero";

  std::vector<double> c(un, 0.0);
  std::vector<double> residual_history;
  double mu = 1.0;  // fixed-point damping
  double prev_residual = -1.0;
  int increases_in_a_row = 0;
  bool newton_disabled = false;

  for (int iter = 1; iter <= settings.max_iter; ++iter) {
    Trajectory x = integrate_ivp(c, spec, settings.policy);
    std::vector<double> alpha_x = functional_values(x, spec);
    std::vector<double> F(un);
    for (std::size_t i = 0; i < un; ++i) F[i] = c[i] - alpha_x[i];
    double res = inf_norm(F);
    residual_history.push_back(res);
    result.history.push_back(IterationRecord{iter, res, mu});

    if (res <= settings.tol) {
      result.trajectory = std::move(x);
      result.iterations = iter;
      result.final_residual = res;
      result.nonlocal_residuals = std::move(F);
      for (double& v : result.nonlocal_residuals) v = std::abs(v);
      result.seminorms = evaluate_seminorms(
          result.trajectory, spec.seminorms.filtered(n), spec.t0);
      return result;
    }

    bool stepped = false;
    if (use_newton && !newton_disabled && iter > 1) {
      // J = I - d<alpha, x_c>/dc, columns by forward differences;
      // independent integrations, so the column loop is parallel.
      std::vector<double> J(un * un);
      std::atomic<bool> failed{false};
      std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (settings.policy == ExecPolicy::openmp)
      for (int m = 0; m < n; ++m) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
          double h = std::sqrt(std::numeric_limits<double>::epsilon()) *
                     (1.0 + std::abs(c[static_cast<std::size_t>(m)]));
          std::vector<double> cm(c);
          cm[static_cast<std::size_t>(m)] += h;
          Trajectory xm = integrate_ivp(cm, spec, ExecPolicy::serial);
          std::vector<double> am = functional_values(xm, spec);
          for (int r = 0; r < n; ++r) {
            double d = -(am[static_cast<std::size_t>(r)] -
                         alpha_x[static_cast<std::size_t>(r)]) /
                       h;
            if (r == m) d += 1.0;
            J[static_cast<std::size_t>(r) * un + static_cast<std::size_t>(m)] =
                d;
          }
        } catch (...) {
#pragma omp critical(nlivp_jacobian_failure)
          {
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
          }
        }
      }
      if (failure) std::rethrow_exception(failure);

      std::vector<double> delta(F);
      for (double& v : delta) v = -v;
      if (lu_solve_inplace(J, delta, n)) {
        for (std::size_t i = 0; i < un; ++i) c[i] += delta[i];
        stepped = true;
      } else {
        newton_disabled = true;
        result.warnings.push_back(
            "finite-difference Jacobian is singular; falling back to the "
            "damped fixed-point map");
      }
    }

    if (!stepped) {
      // Damped fixed-point map c <- (1-mu) c + mu <alpha, x_c>.
      if (prev_residual >= 0.0 && res > prev_residual)
        ++increases_in_a_row;
      else
        increases_in_a_row = 0;
      if (increases_in_a_row >= 2 && mu > kDampingFloor) {
        mu = std::max(0.5 * mu, kDampingFloor);
        increases_in_a_row = 0;
      }
      for (std::size_t i = 0; i < un; ++i)
        c[i] = (1.0 - mu) * c[i] + mu * alpha_x[i];
    }
    prev_residual = res;
  }

  throw NonConvergence(
      "shooting did not reach tol=" + compact(settings.tol) + " within " +
          std::to_string(settings.max_iter) + " iterations (last residual " +
          compact(residual_history.back()) + ")",
      residual_history);
}

}  // namespace nlivp
