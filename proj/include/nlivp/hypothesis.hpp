#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlivp/problem.hpp"

namespace nlivp {

/// G_p = max_{n<=n_p} |1 - <alpha_n,1>|^{-1} * max_{n<=n_p} ||alpha_n|| + 1.
/// Throws HypothesisViolation naming the offending n when <alpha_n,1> = 1.
double compute_G(const ProblemSpec& spec, int p);

/// lhs = G_p ||A_p||_L1 and the strict verdict lhs < 1.
std::pair<double, bool> check_inequality(const ProblemSpec& spec, int p);

/// theta_p = 2 C_p / (1 - G_p ||A_p||_L1), the midpoint choice making
/// M_p = G_p||A_p|| + (1 - G_p||A_p||)/2 < 1; theta_p = 1 when C_p = 0.
/// Requires the inequality to hold at p.
double select_theta(const ProblemSpec& spec, int p);

struct ProofConstants {
  double theta = 0.0;
  double M = 0.0;    // G_p ||A_p|| + C_p / theta_p
  double K = 0.0;    // G_p t0 B_p + C_p (t_p - t0)
  double rho = 0.0;  // K_p / (1 - M_p), the minimal admissible radius
};

/// All proof constants at level p (requires the inequality to hold).
ProofConstants compute_constants(const ProblemSpec& spec, int p);

struct PRecord {
  int p = 0;
  int n_p = 0;
  double t_p = 0.0;
  double G = 0.0;
  double normA = 0.0;
  double B = 0.0;
  double C = 0.0;
  double lhs = 0.0;
  bool pass = false;
  bool marginal = false;  // |lhs - 1| < 1e-9
  std::optional<double> theta;
  std::optional<double> M;
  std::optional<double> K;
  std::optional<double> rho;
};

struct HypothesisReport {
  std::vector<PRecord> records;
  bool one_value_ok = true;          // <alpha_n,1> != 1 for all n <= max n_p
  std::vector<int> violations;       // offending component indices
  std::vector<std::string> warnings; // ill-conditioning and marginal notes
  bool overall_pass = false;
};

/// Per-p records for p = 1..p_max (capped by the configured schedule).
/// Requires an envelope.
HypothesisReport build_report(const ProblemSpec& spec, int p_max);

struct SamplingViolation {
  int p = 0;
  double t = 0.0;
  double f_value = 0.0;
  double bound = 0.0;
  int tail_variant = 0;  // 0: tail zero, 1: tail +radius, 2: tail -radius
};

struct SamplingReport {
  int samples = 0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  int violation_count = 0;
  std::vector<SamplingViolation> violations;  // capped at 32 entries
};

/// Monte-Carlo check of the growth envelope: for each configured p, draw
/// (t, x) with t uniform on [0, t_p] and components uniform in
/// [-radius, radius]; components beyond n_p (inside the coupling reach) are
/// set to 0, +radius, and -radius in turn. Flags samples where
/// [f(t,x)]_{n_p} exceeds the envelope bound by a relative margin > 1e-12.
/// Report-only: never throws on violations.
SamplingReport validate_envelope_by_sampling(const ProblemSpec& spec,
                                             int samples, double radius,
                                             std::uint64_t seed);

}  // namespace nlivp
