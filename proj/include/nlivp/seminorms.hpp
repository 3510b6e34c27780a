#pragma once

#include <span>
#include <vector>

#include "nlivp/trajectory.hpp"

namespace nlivp {

/// [x]_n = max_{1<=i<=n} |x_i|. Throws IndexError when n is out of range.
double seminorm_bracket(std::span<const double> x, int n);

/// The weighted-seminorm schedule: indices n_p, times t_p, and exponential
/// weights theta_p. n_seq strictly increasing; t_seq strictly increasing
/// with t0 < t_1 <= ... <= t_max; theta_p > 0.
struct SeminormConfig {
  std::vector<int> n_seq;
  std::vector<double> t_seq;
  std::vector<double> theta;

  std::size_t size() const { return n_seq.size(); }
  void validate(double t0, double t_max) const;
  /// Entries with n_p <= max_components (the ones evaluable on an
  /// N-component trajectory).
  SeminormConfig filtered(int max_components) const;
};

struct SeminormValues {
  double P = 0.0;  // max over [0, t0] of [x(t)]_{n_p}
  double Q = 0.0;  // max over [t0, t_p] of exp(-theta_p (t - t0)) [x(t)]_{n_p}
  double R = 0.0;  // max(P, Q)
};

/// Evaluate (P_p, Q_p, R_p) for every configured p on grid nodes only.
/// Requires n_p <= x.components() and t0, t_p to be grid nodes.
std::vector<SeminormValues> evaluate_seminorms(const Trajectory& x,
                                               const SeminormConfig& cfg,
                                               double t0);

}  // namespace nlivp
