#pragma once

// Shared fixtures for the unit suites: compact spec builders that mirror
// what the config loader assembles.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "nlivp/builtin.hpp"
#include "nlivp/hypothesis.hpp"
#include "nlivp/problem.hpp"

namespace nlivp_test {

using namespace nlivp;

inline std::string format_double_source(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline SeminormConfig default_schedule(double t0, double t_max, int P) {
  SeminormConfig cfg;
  for (int p = 1; p <= P; ++p) {
    cfg.n_seq.push_back(p);
    cfg.t_seq.push_back(t0 + static_cast<double>(p) * (t_max - t0) /
                                 static_cast<double>(P));
    cfg.theta.push_back(1.0);
  }
  return cfg;
}

/// Assemble a spec the way the config loader does: grid snapped to t0, the
/// seminorm times, and the functional support; theta from select_theta where
/// the envelope admits it.
inline ProblemSpec make_spec(std::shared_ptr<const RhsFamily> rhs,
                             std::shared_ptr<const FunctionalFamily> family,
                             std::shared_ptr<const GrowthEnvelope> envelope,
                             double t0, double t_max, double h, int n_components,
                             int P, Closure closure = Closure::zero,
                             bool derive_theta = true) {
  ProblemSpec spec;
  spec.t0 = t0;
  spec.rhs = std::move(rhs);
  spec.functional_family = std::move(family);
  spec.truncation = n_components;
  spec.closure = closure;
  spec.envelope = std::move(envelope);
  spec.seminorms = default_schedule(t0, t_max, P);

  int count = n_components;
  for (int np : spec.seminorms.n_seq) count = std::max(count, np);
  spec.functionals = materialize_functionals(*spec.functional_family, count);

  std::vector<double> snap{t0};
  for (double tp : spec.seminorms.t_seq) snap.push_back(tp);
  for (const StieltjesFunctional& f : spec.functionals)
    for (double t : f.required_nodes()) snap.push_back(t);
  spec.grid = std::make_shared<Grid>(Grid::uniform(t_max, h, snap));

  if (spec.envelope && derive_theta) {
    for (std::size_t p = 1; p <= spec.seminorms.size(); ++p) {
      auto [lhs, pass] = check_inequality(spec, static_cast<int>(p));
      if (pass)
        spec.seminorms.theta[p - 1] = select_theta(spec, static_cast<int>(p));
    }
  }
  spec.validate();
  return spec;
}

inline ProblemSpec example35_spec(double k, double t0, double t_max, double h,
                                  int n_components, int P) {
  KSequence ks;
  ks.constant = k;
  BuiltinProblem b = make_example35(ks, t0);
  return make_spec(b.rhs, b.functionals, b.envelope, t0, t_max, h,
                   n_components, P);
}

inline ProblemSpec constant_oracle_spec(double t0 = 1.0, double t_max = 2.0,
                                        double h = 1e-3) {
  BuiltinProblem b = make_constant_rhs_oracle(1.0, 0.5, 0.5, t0);
  return make_spec(b.rhs, b.functionals, b.envelope, t0, t_max, h, 1, 1);
}

inline ProblemSpec uncoupled_exp_spec(double t0 = 1.0, double t_max = 2.0,
                                      double h = 1e-3, int n_components = 1) {
  BuiltinProblem b = make_uncoupled_exp(1.0, 0.5, 0.25, t0);
  return make_spec(b.rhs, b.functionals, b.envelope, t0, t_max, h,
                   n_components, 1);
}

/// Closed-form solution of uncoupled_exp (shift=1, mass w at tau):
/// x(t) = (c+1) e^t - 1 with c = w (e^tau - 1) / (1 - w e^tau).
inline double uncoupled_exp_exact(double t, double tau = 0.5,
                                  double w = 0.25) {
  double c = w * (std::exp(tau) - 1.0) / (1.0 - w * std::exp(tau));
  return (c + 1.0) * std::exp(t) - 1.0;
}

}  // namespace nlivp_test
