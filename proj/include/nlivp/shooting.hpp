#pragma once

#include <span>
#include <vector>

#include "nlivp/picard.hpp"
#include "nlivp/problem.hpp"

namespace nlivp {

struct ShootingSettings {
  double tol = 1e-10;  // on ||F(c)||_inf
  int max_iter = 100;
  ExecPolicy policy = default_policy();
  /// Newton with a finite-difference Jacobian is used up to this dimension;
  /// beyond it only the damped fixed-point map on c runs.
  int newton_max_dim = 64;
  /// Force the damped fixed-point map even for small systems.
  bool disable_newton = false;
};

/// Shooting residual F(c): F_n(c) = c_n - <alpha_n, (x_c)_n|[0,t0]> where
/// x_c solves the classical IVP x' = f(t,x), x(0) = c.
struct ShootResidual {
  std::vector<double> c;
  std::vector<double> F;
};

/// RK4 integration of x' = f(t, x), x(0) = c on the problem grid.
Trajectory integrate_ivp(std::span<const double> c, const ProblemSpec& spec,
                         ExecPolicy policy = default_policy());

/// F(c) as above, paired with the c it was evaluated at.
ShootResidual shoot_residual(std::span<const double> c,
                             const ProblemSpec& spec,
                             ExecPolicy policy = default_policy());

/// Root-find F(c) = 0: a fixed-point step c <- <alpha, x_c|[0,t0]> first,
/// then Newton with a finite-difference Jacobian (dimension permitting),
/// falling back to the damped fixed-point map when the Jacobian is singular.
/// Jacobian columns are independent IVP integrations and run in parallel.
SolveResult solve_shooting(const ProblemSpec& spec,
                           const ShootingSettings& settings);

}  // namespace nlivp
