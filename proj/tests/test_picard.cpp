#include <doctest.h>

#include <cmath>

#include "nlivp/errors.hpp"
#include "nlivp/picard.hpp"
#include "nlivp/rng.hpp"
#include "nlivp/shooting.hpp"
#include "test_helpers.hpp"

using namespace nlivp;
using namespace nlivp_test;

namespace {

std::shared_ptr<const RhsFamily> native_rhs(const char* name,
                                            NativeRhs::Fn fn,
                                            CouplingBand band = {0, 0}) {
  return std::make_shared<NativeRhs>(name, std::move(fn), band);
}

std::shared_ptr<const FunctionalFamily> mass_family(double t, double w,
                                                    double t0) {
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{{t, w}}, PiecewisePoly{}, t0);
  return std::make_shared<ListFunctionalFamily>(std::move(entries), true);
}

std::shared_ptr<const FunctionalFamily> zero_family(double t0) {
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{}, PiecewisePoly{}, t0);
  return std::make_shared<ListFunctionalFamily>(std::move(entries), true);
}

Trajectory random_trajectory(const ProblemSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> values(spec.grid->node_count() *
                             static_cast<std::size_t>(spec.truncation));
  for (double& v : values) v = rng.uniform(-2.0, 2.0);
  return Trajectory(spec.grid, spec.truncation, std::move(values));
}

}  // namespace

TEST_SUITE("picard") {

TEST_CASE("integrate_rhs: zero, constant, and linear integrands are exact") {
  auto zero = native_rhs("zero", [](int, double, const StateView&) {
    return 0.0;
  });
  ProblemSpec spec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.25, 1, 1);
  Trajectory v = random_trajectory(spec, 1);
  Trajectory r = integrate_rhs(v, spec);
  CHECK(r.sup_norm() == 0.0);

  auto one = native_rhs("one", [](int, double, const StateView&) {
    return 1.0;
  });
  spec.rhs = one;
  Trajectory r1 = integrate_rhs(v, spec);
  for (std::size_t i = 0; i < r1.node_count(); ++i)
    CHECK(r1.value(i, 1) == doctest::Approx(spec.grid->node(i)).epsilon(1e-15));

  auto ramp = native_rhs("ramp", [](int, double t, const StateView&) {
    return t;
  });
  ProblemSpec spec2 = make_spec(ramp, mass_family(0.25, 0.5, 0.5), nullptr,
                                0.5, 1.0, 0.5, 1, 1);
  Trajectory v2 = Trajectory::zero(spec2.grid, 1);
  Trajectory r2 = integrate_rhs(v2, spec2);
  CHECK(r2.value(r2.node_count() - 1, 1) == 0.5);  // trapezoid exact on t
}

TEST_CASE("apply_T: zero RHS collapses to zero for any input") {
  auto zero = native_rhs("zero", [](int, double, const StateView&) {
    return 0.0;
  });
  ProblemSpec spec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.125, 1, 1);
  Trajectory v = random_trajectory(spec, 2);
  CHECK(apply_T(v, spec).sup_norm() == 0.0);
}

TEST_CASE("apply_T: constant RHS with one point mass has closed form") {
  // T(v)(t) = c + t with c = w t1 / (1 - w) = 0.5 for w = 0.5, t1 = 0.5.
  auto one = native_rhs("one", [](int, double, const StateView&) {
    return 1.0;
  });
  ProblemSpec spec = make_spec(one, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 1e-3, 1, 1);
  Trajectory v = random_trajectory(spec, 3);
  Trajectory t_of_v = apply_T(v, spec);
  for (std::size_t i = 0; i < t_of_v.node_count(); i += 97)
    CHECK(t_of_v.value(i, 1) ==
          doctest::Approx(0.5 + spec.grid->node(i)).epsilon(1e-12));
}

TEST_CASE("apply_T: zero functional reduces to the plain Volterra operator") {
  auto linear = native_rhs("x", [](int c, double, const StateView& x) {
    return x(c);
  });
  ProblemSpec spec = make_spec(linear, zero_family(1.0), nullptr, 1.0, 2.0,
                               0.125, 1, 1);
  Trajectory zero_traj = Trajectory::zero(spec.grid, 1);
  CHECK(apply_T(zero_traj, spec).sup_norm() == 0.0);
}

TEST_CASE("apply_T rejects <alpha,1> = 1 and warns near it") {
  auto one = native_rhs("one", [](int, double, const StateView&) {
    return 1.0;
  });
  ProblemSpec bad = make_spec(one, mass_family(0.5, 1.0, 1.0), nullptr, 1.0,
                              2.0, 0.25, 1, 1);
  Trajectory v = Trajectory::zero(bad.grid, 1);
  CHECK_THROWS_AS(apply_T(v, bad), HypothesisViolation);

  ProblemSpec near = make_spec(one, mass_family(0.5, 1.0 - 1e-9, 1.0), nullptr,
                               1.0, 2.0, 0.25, 1, 1);
  std::vector<std::string> warnings;
  apply_T(Trajectory::zero(near.grid, 1), near, default_policy(), &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ill-conditioned") != std::string::npos);
}

TEST_CASE("solve_picard: constant oracle converges to 0.5 + t immediately") {
  ProblemSpec spec = constant_oracle_spec();
  PicardSettings settings;
  SolveResult result = solve_picard(spec, settings);
  CHECK(result.iterations <= 2);
  CHECK(result.method == "picard");
  CHECK(result.initial_guess == "zero");

  double worst = 0.0;
  for (std::size_t i = 0; i < result.trajectory.node_count(); ++i)
    worst = std::max(worst, std::abs(result.trajectory.value(i, 1) -
                                     (0.5 + spec.grid->node(i))));
  CHECK(worst <= 1e-9);
  REQUIRE(result.nonlocal_residuals.size() == 1);
  CHECK(result.nonlocal_residuals[0] <= 1e-12);
}

TEST_CASE("solve_picard: zero RHS gives the zero solution in one step") {
  auto zero = native_rhs("zero", [](int, double, const StateView&) {
    return 0.0;
  });
  ProblemSpec spec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.01, 1, 1);
  SolveResult result = solve_picard(spec, PicardSettings{});
  CHECK(result.trajectory.sup_norm() == 0.0);
  CHECK(result.iterations <= 2);
}

TEST_CASE("solve_picard: fixed-point property of the converged iterate") {
  ProblemSpec spec = example35_spec(0.5, 1.0, 2.0, 0.01, 4, 2);
  PicardSettings settings;
  settings.tol = 1e-11;
  SolveResult result = solve_picard(spec, settings);

  Trajectory t_of_x = apply_T(result.trajectory, spec);
  SeminormConfig metric = spec.seminorms.filtered(spec.truncation);
  std::vector<SeminormValues> change =
      evaluate_seminorms(t_of_x.difference(result.trajectory), metric, spec.t0);
  std::vector<SeminormValues> scale =
      evaluate_seminorms(result.trajectory, metric, spec.t0);
  for (std::size_t p = 0; p < change.size(); ++p)
    CHECK(change[p].R <= 10.0 * settings.tol * (1.0 + scale[p].R));
}

TEST_CASE("solve_picard: iterates stay inside the invariant set") {
  // With v0 = 0 (inside every ball) the proof's radii bound all iterates.
  ProblemSpec spec = example35_spec(0.5, 1.0, 2.0, 0.01, 4, 2);
  REQUIRE(spec.envelope);
  std::vector<double> rho;
  for (std::size_t p = 1; p <= spec.seminorms.size(); ++p)
    rho.push_back(compute_constants(spec, static_cast<int>(p)).rho);

  PicardSettings settings;
  settings.observer = [&](int, const Trajectory& iterate, double) {
    std::vector<SeminormValues> values = evaluate_seminorms(
        iterate, spec.seminorms.filtered(iterate.components()), spec.t0);
    for (std::size_t p = 0; p < values.size(); ++p)
      CHECK(values[p].R <= rho[p] * (1.0 + 1e-4));
  };
  solve_picard(spec, settings);
}

TEST_CASE("solve_picard: halving h changes the solution at second order") {
  double errors[3];
  int idx = 0;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    ProblemSpec spec = uncoupled_exp_spec(1.0, 2.0, h);
    PicardSettings settings;
    settings.tol = 1e-13;
    settings.max_iter = 400;
    SolveResult result = solve_picard(spec, settings);
    std::size_t last = result.trajectory.node_count() - 1;
    errors[idx++] = std::abs(result.trajectory.value(last, 1) -
                             uncoupled_exp_exact(2.0));
  }
  double ratio1 = errors[0] / errors[1];
  double ratio2 = errors[1] / errors[2];
  CHECK(ratio1 >= 2.0);
  CHECK(ratio1 <= 8.0);
  CHECK(ratio2 >= 2.0);
  CHECK(ratio2 <= 8.0);
}

TEST_CASE("solve_picard: a user initial guess is honoured and recorded") {
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.01);
  SolveResult cold = solve_picard(spec, PicardSettings{});
  SolveResult warm = solve_picard(spec, PicardSettings{}, cold.trajectory);
  CHECK(warm.initial_guess == "user");
  CHECK(warm.iterations == 1);  // started at the fixed point
  CHECK(warm.trajectory.sup_distance(cold.trajectory) <= 1e-12);
}

TEST_CASE("solve_picard: damped iteration still reaches the fixed point") {
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.01);
  PicardSettings settings;
  settings.damping = 0.5;
  settings.max_iter = 100;
  SolveResult result = solve_picard(spec, settings);
  std::size_t last = result.trajectory.node_count() - 1;
  CHECK(result.trajectory.value(last, 1) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("solve_picard: growing residuals trigger damping, then converge") {
  // x' = -5x + 1: the undamped iterates build the alternating series of
  // e^{-5t} term by term, so early residuals grow for several iterations
  // in a row and the oscillation rule must halve the step.
  auto decay = native_rhs("-5x+1", [](int c, double, const StateView& x) {
    return -5.0 * x(c) + 1.0;
  });
  ProblemSpec spec = make_spec(decay, mass_family(0.5, 0.5, 1.0), nullptr,
                               1.0, 2.0, 0.01, 1, 1);
  PicardSettings settings;
  settings.max_iter = 400;
  SolveResult result = solve_picard(spec, settings);

  bool damped = false;
  for (const IterationRecord& rec : result.history)
    if (rec.damping < 1.0) damped = true;
  CHECK(damped);
  CHECK(result.history.back().damping >= 1.0 / 16.0);

  // Cross-check the damped fixed point against the shooting solver.
  ShootingSettings ss;
  SolveResult shoot = solve_shooting(spec, ss);
  CHECK(result.trajectory.sup_distance(shoot.trajectory) <= 1e-5);
}

TEST_CASE("solve_picard: non-convergence carries the residual history") {
  // x' = 10x + 1 from v = 0: the iterates build the series of e^{10t}
  // term by term, far more slowly than three iterations allow.
  auto stiff = native_rhs("10x+1", [](int c, double, const StateView& x) {
    return 10.0 * x(c) + 1.0;
  });
  ProblemSpec spec = make_spec(stiff, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.01, 1, 1);
  PicardSettings settings;
  settings.max_iter = 3;
  try {
    solve_picard(spec, settings);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.residual_history().size() == 3);
  }
}

TEST_CASE("solve_picard validates its settings") {
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.25);
  PicardSettings bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve_picard(spec, bad), ConfigError);
  bad = PicardSettings{};
  bad.damping = 1.5;
  CHECK_THROWS_AS(solve_picard(spec, bad), ConfigError);
  bad = PicardSettings{};
  bad.max_iter = 0;
  CHECK_THROWS_AS(solve_picard(spec, bad), ConfigError);
}

}  // TEST_SUITE
