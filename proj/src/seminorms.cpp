#include "nlivp/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

double seminorm_bracket(std::span<const double> x, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > x.size())
    throw IndexError("seminorm bracket index " + std::to_string(n) +
                     " out of range 1.." + std::to_string(x.size()));
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    best = std::max(best, std::abs(x[static_cast<std::size_t>(i)]));
  return best;
}

void SeminormConfig::validate(double t0, double t_max) const {
  if (n_seq.size() != t_seq.size() || n_seq.size() != theta.size())
    throw ConfigError("seminorm sequences must have equal lengths");
  if (n_seq.empty()) throw ConfigError("seminorm config must not be empty");
  for (std::size_t p = 0; p < n_seq.size(); ++p) {
    if (n_seq[p] < 1) throw ConfigError("seminorm indices n_p must be >= 1");
    if (p > 0 && n_seq[p] <= n_seq[p - 1])
      throw ConfigError("seminorm indices n_p must be strictly increasing");
    if (!(theta[p] > 0.0) || !std::isfinite(theta[p]))
      throw ConfigError("seminorm weights theta_p must be positive");
    if (!(t_seq[p] > t0))
      throw ConfigError("seminorm times must satisfy t_p > t0");
    if (p > 0 && t_seq[p] <= t_seq[p - 1])
      throw ConfigError("seminorm times t_p must be strictly increasing");
    if (t_seq[p] > t_max)
      throw ConfigError("seminorm time t_p=" + std::to_string(t_seq[p]) +
                        " exceeds t_max");
  }
}

SeminormConfig SeminormConfig::filtered(int max_components) const {
  SeminormConfig out;
  for (std::size_t p = 0; p < n_seq.size(); ++p) {
    if (n_seq[p] > max_components) break;  // n_seq is increasing
    out.n_seq.push_back(n_seq[p]);
    out.t_seq.push_back(t_seq[p]);
    out.theta.push_back(theta[p]);
  }
  return out;
}

std::vector<SeminormValues> evaluate_seminorms(const Trajectory& x,
                                               const SeminormConfig& cfg,
                                               double t0) {
  const Grid& g = x.grid();
  std::size_t i0 = g.index_of(t0);
  std::vector<SeminormValues> out(cfg.size());
  for (std::size_t p = 0; p < cfg.size(); ++p) {
    int np = cfg.n_seq[p];
    if (np > x.components())
      throw ConfigError("seminorm index n_p=" + std::to_string(np) +
                        " exceeds trajectory component count " +
                        std::to_string(x.components()));
    std::size_t ip = g.index_of(cfg.t_seq[p]);
    double P = 0.0;
    for (std::size_t i = 0; i <= i0; ++i)
      P = std::max(P, seminorm_bracket(x.row(i), np));
    double Q = 0.0;
    for (std::size_t i = i0; i <= ip; ++i) {
      double w = std::exp(-cfg.theta[p] * (g.node(i) - t0));
      Q = std::max(Q, w * seminorm_bracket(x.row(i), np));
    }
    out[p] = SeminormValues{P, Q, std::max(P, Q)};
  }
  return out;
}

}  // namespace nlivp
