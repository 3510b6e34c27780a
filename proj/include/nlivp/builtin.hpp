#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlivp/dsl.hpp"
#include "nlivp/envelope.hpp"
#include "nlivp/functional.hpp"
#include "nlivp/rhs.hpp"

namespace nlivp {

/// The k_n parameter family of the builtin problems: a constant, an explicit
/// list, or a closed-form rule in n (with t0 bound as a scalar).
struct KSequence {
  std::optional<double> constant;
  std::vector<double> list;
  std::shared_ptr<const dsl::Expr> rule;

  double at(int n, double t0) const;
  /// max_{m<=p} |k_m|.
  double running_max(int p, double t0) const;
};

/// What a builtin problem contributes; functionals/envelope may be absent
/// (then the configuration must declare them).
struct BuiltinProblem {
  std::shared_ptr<const RhsFamily> rhs;
  std::shared_ptr<const FunctionalFamily> functionals;
  std::shared_ptr<const GrowthEnvelope> envelope;
};

/// x_n' = k_n/(1+t^2) x_n + t cos(x_{n+1}),
/// x_n(0) = (n+t0)^{-1} integral_0^t0 x_n(s) ds, with the matching envelope
/// A_p(t) = [k]_p/(1+t^2) (L1 norm [k]_p atan t0), B_p = t0, C_p = [k]_p + t_p.
BuiltinProblem make_example35(KSequence k, double t0);

/// Threshold on a constant k below which the example35 inequality holds:
/// 1 / ((1+t0) atan t0).
double example35_constant_k_threshold(double t0);

/// f == value (every component), one point mass alpha = mass_w at mass_t.
/// Closed-form solution for N=1: x(t) = value*(t + mass_w*mass_t/(1-mass_w)).
BuiltinProblem make_constant_rhs_oracle(double value, double mass_t,
                                        double mass_w, double t0);

/// Uncoupled x_n' = x_n + shift with alpha = one point mass; closed form
/// x(t) = (c+shift) e^t - shift, c = mass_w (e^mass_t - 1) shift /
/// (1 - mass_w e^mass_t). Ships without an envelope (the natural bound has
/// ||A||_L1 = t0, which fails the strict inequality for t0 >= 1).
BuiltinProblem make_uncoupled_exp(double shift, double mass_t, double mass_w,
                                  double t0);

/// Finite affine system x' = A(t) x + b(t); entries are expression sources
/// in t. Functionals and envelope come from the surrounding configuration.
std::shared_ptr<const RhsFamily> make_finite_affine(
    const std::vector<std::vector<std::string>>& a_sources,
    const std::vector<std::string>& b_sources);

}  // namespace nlivp
