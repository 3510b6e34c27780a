#include "nlivp/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

ProblemSpec truncate(const ProblemSpec& infinite_spec, int n_components,
                     Closure closure) {
  if (n_components < 1)
    throw ConfigError("truncation level N must be >= 1");
  if (!infinite_spec.rhs->is_generator())
    throw ConfigError(
        "only an infinite (generator or padded) family can be truncated");
  if (!infinite_spec.functional_family)
    throw InternalError("spec has no functional family to re-materialize");

  ProblemSpec out = infinite_spec;
  out.truncation = n_components;
  out.closure = closure;
  int needed = n_components;
  for (int np : out.seminorms.n_seq) needed = std::max(needed, np);
  if (needed > out.materialized_functionals())
    out.functionals =
        materialize_functionals(*out.functional_family, needed);
  out.validate();
  return out;
}

ProblemSpec pad_finite(const ProblemSpec& finite_spec) {
  const int n = finite_spec.rhs->component_count();
  if (finite_spec.rhs->is_generator() || n < 1)
    throw ConfigError("pad_finite needs a finite component-list RHS");

  for (int i = 1; i <= n; ++i) {
    if (finite_spec.functional(i).one_value() == 1.0)
      throw HypothesisViolation(
          "<eta_n, 1> = 1 for component " + std::to_string(i) +
              "; the padded system is undefined",
          i);
  }

  ProblemSpec out = finite_spec;
  out.rhs = std::make_shared<PaddedRhs>(finite_spec.rhs);
  out.functional_family = std::make_shared<ListFunctionalFamily>(
      std::vector<StieltjesFunctional>(finite_spec.functionals.begin(),
                                       finite_spec.functionals.begin() + n),
      /*repeat_last=*/true);

  // The finite-case schedule: n_p = N + p - 1.
  for (std::size_t p = 0; p < out.seminorms.n_seq.size(); ++p)
    out.seminorms.n_seq[p] = n + static_cast<int>(p);

  int needed = out.truncation;
  for (int np : out.seminorms.n_seq) needed = std::max(needed, np);
  out.functionals = materialize_functionals(*out.functional_family, needed);
  return out;
}

namespace {

SolveResult run_solver(const ProblemSpec& spec, const StudySettings& s) {
  if (s.method == SolverMethod::picard) {
    PicardSettings ps;
    ps.tol = s.tol;
    ps.max_iter = s.max_iter;
    ps.policy = s.policy;
    return solve_picard(spec, ps);
  }
  ShootingSettings ss;
  ss.tol = s.tol;
  ss.max_iter = s.max_iter;
  ss.policy = s.policy;
  return solve_shooting(spec, ss);
}

}  // namespace

StudyTable convergence_study(const ProblemSpec& infinite_spec,
                             std::span<const int> n_list,
                             const StudySettings& settings) {
  if (n_list.empty()) throw ConfigError("truncation list must not be empty");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw ConfigError("truncation list must be strictly increasing");
  if (!infinite_spec.rhs->is_generator())
    throw ConfigError(
        "a convergence study needs an infinite (generator or padded) RHS "
        "family");

  StudyTable table;
  std::vector<std::optional<Trajectory>> solutions;
  for (int n : n_list) {
    StudyRow row;
    row.n_components = n;
    try {
      ProblemSpec spec = truncate(infinite_spec, n, infinite_spec.closure);
      SolveResult res = run_solver(spec, settings);
      row.iterations = res.iterations;
      row.status = "converged";
      solutions.emplace_back(std::move(res.trajectory));
    } catch (const Error& e) {
      row.status = e.what();
      solutions.emplace_back(std::nullopt);
    }
    table.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    if (!solutions[i] || !solutions[i + 1]) continue;
    int shared = n_list[i];
    Trajectory diff = solutions[i]->difference(*solutions[i + 1], shared);
    SeminormConfig metric = infinite_spec.seminorms.filtered(shared);
    if (metric.size() == 0) continue;
    std::vector<SeminormValues> values =
        evaluate_seminorms(diff, metric, infinite_spec.t0);
    double d = 0.0;
    for (const SeminormValues& v : values) d = std::max(d, v.R);
    table.rows[i].d = d;
  }

  double prev = -1.0;
  for (const StudyRow& row : table.rows) {
    if (!row.d) continue;
    if (prev >= 0.0 && *row.d > prev) table.nonincreasing = false;
    prev = *row.d;
  }
  return table;
}

}  // namespace nlivp
