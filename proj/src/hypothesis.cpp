#include "nlivp/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "nlivp/errors.hpp"
#include "nlivp/rng.hpp"
#include "nlivp/seminorms.hpp"

namespace nlivp {

namespace {

constexpr double kMarginalBand = 1e-9;

int seminorm_index(const ProblemSpec& spec, int p) {
  if (p < 1 || static_cast<std::size_t>(p) > spec.seminorms.size())
    throw ConfigError("p=" + std::to_string(p) +
                      " exceeds the configured seminorm schedule (P=" +
                      std::to_string(spec.seminorms.size()) + ")");
  return spec.seminorms.n_seq[static_cast<std::size_t>(p - 1)];
}

double seminorm_time(const ProblemSpec& spec, int p) {
  return spec.seminorms.t_seq[static_cast<std::size_t>(p - 1)];
}

const GrowthEnvelope& envelope_of(const ProblemSpec& spec) {
  if (!spec.envelope)
    throw ConfigError("problem declares no growth envelope");
  return *spec.envelope;
}

double envelope_C(const ProblemSpec& spec, int p) {
  double c = envelope_of(spec).C(p, seminorm_time(spec, p));
  if (!(c >= 0.0))
    throw ConfigError("envelope C_p must be nonnegative");
  return c;
}

}  // namespace

double compute_G(const ProblemSpec& spec, int p) {
  int np = seminorm_index(spec, p);
  if (np > spec.materialized_functionals())
    throw ConfigError("n_p exceeds the materialized functional count");
  double max_inv = 0.0;
  double max_norm = 0.0;
  for (int n = 1; n <= np; ++n) {
    const StieltjesFunctional& alpha = spec.functional(n);
    double one = alpha.one_value();
    if (one == 1.0)
      throw HypothesisViolation(
          "<alpha_n, 1> = 1 for component " + std::to_string(n) +
              "; hypothesis (one-value) fails",
          n);
    max_inv = std::max(max_inv, 1.0 / std::abs(1.0 - one));
    max_norm = std::max(max_norm, alpha.dual_norm());
  }
  return max_inv * max_norm + 1.0;
}

std::pair<double, bool> check_inequality(const ProblemSpec& spec, int p) {
  double lhs = compute_G(spec, p) * envelope_of(spec).A_l1_norm(p);
  return {lhs, lhs < 1.0};
}

double select_theta(const ProblemSpec& spec, int p) {
  auto [lhs, pass] = check_inequality(spec, p);
  if (!pass) {
    char lhs_text[32];
    std::snprintf(lhs_text, sizeof(lhs_text), "%g", lhs);
    throw HypothesisViolation(
        "inequality G_p ||A_p|| < 1 fails at p=" + std::to_string(p) +
        " (lhs=" + lhs_text + "); no admissible theta_p exists");
  }
  double C = envelope_C(spec, p);
  if (C == 0.0) return 1.0;
  return 2.0 * C / (1.0 - lhs);
}

ProofConstants compute_constants(const ProblemSpec& spec, int p) {
  double G = compute_G(spec, p);
  double normA = envelope_of(spec).A_l1_norm(p);
  double B = envelope_of(spec).B(p);
  if (!(B >= 0.0)) throw ConfigError("envelope B_p must be nonnegative");
  double C = envelope_C(spec, p);
  double theta = select_theta(spec, p);

  ProofConstants out;
  out.theta = theta;
  out.M = G * normA + C / theta;
  if (out.M >= 1.0)
    throw InternalError("M_p >= 1 despite a passing inequality");
  double t_p = seminorm_time(spec, p);
  out.K = G * spec.t0 * B + C * (t_p - spec.t0);
  out.rho = out.K / (1.0 - out.M);
  return out;
}

HypothesisReport build_report(const ProblemSpec& spec, int p_max) {
  HypothesisReport report;
  if (p_max < 1) throw ConfigError("p_max must be >= 1");
  p_max = std::min<int>(p_max, static_cast<int>(spec.seminorms.size()));

  int max_np = seminorm_index(spec, p_max);
  for (int n = 1; n <= max_np; ++n) {
    const StieltjesFunctional& alpha = spec.functional(n);
    double one = alpha.one_value();
    if (one == 1.0) {
      report.one_value_ok = false;
      report.violations.push_back(n);
    } else if (std::abs(1.0 - one) < 1e-8) {
      report.warnings.push_back(
          "component " + std::to_string(n) + ": |1 - <alpha_n,1>| = " +
          std::to_string(std::abs(1.0 - one)) + " is below 1e-8");
    }
  }

  for (int p = 1; p <= p_max; ++p) {
    PRecord rec;
    rec.p = p;
    rec.n_p = seminorm_index(spec, p);
    rec.t_p = seminorm_time(spec, p);
    if (!report.one_value_ok) {
      // G_p is undefined; record the schedule row without constants.
      rec.pass = false;
      report.records.push_back(rec);
      continue;
    }
    rec.G = compute_G(spec, p);
    rec.normA = envelope_of(spec).A_l1_norm(p);
    rec.B = envelope_of(spec).B(p);
    rec.C = envelope_C(spec, p);
    rec.lhs = rec.G * rec.normA;
    rec.pass = rec.lhs < 1.0;
    rec.marginal = std::abs(rec.lhs - 1.0) < kMarginalBand;
    if (rec.marginal)
      report.warnings.push_back("p=" + std::to_string(p) +
                                ": lhs is within 1e-9 of 1 (marginal)");
    if (rec.pass) {
      ProofConstants pc = compute_constants(spec, p);
      rec.theta = pc.theta;
      rec.M = pc.M;
      rec.K = pc.K;
      rec.rho = pc.rho;
    }
    report.records.push_back(rec);
  }

  report.overall_pass = report.one_value_ok &&
                        std::all_of(report.records.begin(),
                                    report.records.end(),
                                    [](const PRecord& r) { return r.pass; });
  return report;
}

SamplingReport validate_envelope_by_sampling(const ProblemSpec& spec,
                                             int samples, double radius,
                                             std::uint64_t seed) {
  if (samples < 1) throw ConfigError("sample count must be >= 1");
  if (!(radius > 0.0)) throw ConfigError("sampling radius must be positive");
  const GrowthEnvelope& env = envelope_of(spec);

  SamplingReport report;
  report.samples = samples;
  report.radius = radius;
  report.seed = seed;

  Rng rng(seed);
  const auto P = static_cast<int>(spec.seminorms.size());
  for (int p = 1; p <= P; ++p) {
    int np = seminorm_index(spec, p);
    double t_p = seminorm_time(spec, p);
    double C = envelope_C(spec, p);
    double B = env.B(p);

    // Components beyond n_p that f_1..f_{n_p} can reach.
    int reach = np;
    for (int n = 1; n <= np; ++n)
      reach = std::max(reach, spec.rhs->max_read_index(n));

    std::vector<double> x(static_cast<std::size_t>(reach));
    for (int s = 0; s < samples; ++s) {
      double t = rng.uniform(0.0, t_p);
      for (int i = 0; i < np; ++i)
        x[static_cast<std::size_t>(i)] = rng.uniform(-radius, radius);
      double bracket_x =
          seminorm_bracket(std::span<const double>(x.data(),
                                                   static_cast<std::size_t>(np)),
                           np);
      double bound = t <= spec.t0 ? env.A_value(p, t) * bracket_x + B
                                  : C * (bracket_x + 1.0);

      for (int variant = 0; variant < 3; ++variant) {
        double tail = variant == 0 ? 0.0 : (variant == 1 ? radius : -radius);
        for (int i = np; i < reach; ++i)
          x[static_cast<std::size_t>(i)] = tail;
        StateView view(x, spec.closure);
        double f_bracket = 0.0;
        for (int n = 1; n <= np; ++n)
          f_bracket = std::max(f_bracket, std::abs(spec.rhs->eval(n, t, view)));
        if (f_bracket > bound * (1.0 + 1e-12)) {
          ++report.violation_count;
          if (report.violations.size() < 32)
            report.violations.push_back(
                SamplingViolation{p, t, f_bracket, bound, variant});
        }
      }
    }
  }
  return report;
}

}  // namespace nlivp
