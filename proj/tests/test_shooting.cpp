#include <doctest.h>

#include <cmath>

#include "nlivp/errors.hpp"
#include "nlivp/linalg.hpp"
#include "nlivp/rng.hpp"
#include "nlivp/shooting.hpp"
#include "test_helpers.hpp"

using namespace nlivp;
using namespace nlivp_test;

namespace {

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

}  // namespace

TEST_SUITE("shooting") {

TEST_CASE("integrate_ivp: constants, ramps, and the exponential") {
  auto zero = std::make_shared<NativeRhs>(
      "zero", [](int, double, const StateView&) { return 0.0; },
      CouplingBand{0, 0});
  ProblemSpec spec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.25, 2, 1);
  Trajectory constant = integrate_ivp(std::vector<double>{1.0, 2.0}, spec);
  for (std::size_t i = 0; i < constant.node_count(); ++i) {
    CHECK(constant.value(i, 1) == 1.0);
    CHECK(constant.value(i, 2) == 2.0);
  }

  auto one = std::make_shared<NativeRhs>(
      "one", [](int, double, const StateView&) { return 1.0; },
      CouplingBand{0, 0});
  ProblemSpec ramp = make_spec(one, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.25, 1, 1);
  Trajectory t = integrate_ivp(std::vector<double>{0.0}, ramp);
  for (std::size_t i = 0; i < t.node_count(); ++i)
    CHECK(t.value(i, 1) == doctest::Approx(ramp.grid->node(i)).epsilon(1e-16));

  auto exp_rhs = std::make_shared<NativeRhs>(
      "x", [](int c, double, const StateView& x) { return x(c); },
      CouplingBand{0, 0});
  ProblemSpec exp_spec = make_spec(exp_rhs, mass_family(0.25, 0.5, 0.5),
                                   nullptr, 0.5, 1.0, 1e-3, 1, 1);
  Trajectory e = integrate_ivp(std::vector<double>{1.0}, exp_spec);
  CHECK(std::abs(e.value(e.node_count() - 1, 1) - std::exp(1.0)) <= 1e-10);

  CHECK_THROWS_AS(integrate_ivp(std::vector<double>{1.0}, spec), IndexError);
}

TEST_CASE("shoot residual: affine closed forms") {
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.01);
  for (double c : {0.0, 1.0, 2.0}) {
    ShootResidual r = shoot_residual(std::vector<double>{c}, spec);
    REQUIRE(r.F.size() == 1);
    REQUIRE(r.c.size() == 1);
    CHECK(r.c[0] == c);
    CHECK(r.F[0] == doctest::Approx(0.5 * c - 0.25).epsilon(1e-13));
  }

  auto zero = std::make_shared<NativeRhs>(
      "zero", [](int, double, const StateView&) { return 0.0; },
      CouplingBand{0, 0});
  ProblemSpec zspec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                                2.0, 0.25, 1, 1);
  std::vector<double> F0 = shoot_residual(std::vector<double>{3.0}, zspec).F;
  CHECK(F0[0] == doctest::Approx(3.0 * (1.0 - 0.5)).epsilon(1e-15));

  ProblemSpec nofunc = make_spec(zero, zero_family(1.0), nullptr, 1.0, 2.0,
                                 0.25, 1, 1);
  std::vector<double> Fz = shoot_residual(std::vector<double>{-2.0}, nofunc).F;
  CHECK(Fz[0] == -2.0);
}

TEST_CASE("solve_shooting: constant oracle lands on c = 0.5") {
  ProblemSpec spec = constant_oracle_spec();
  ShootingSettings settings;
  SolveResult result = solve_shooting(spec, settings);
  CHECK(result.method == "shoot");
  CHECK(result.iterations <= 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < result.trajectory.node_count(); ++i)
    worst = std::max(worst, std::abs(result.trajectory.value(i, 1) -
                                     (0.5 + spec.grid->node(i))));
  CHECK(worst <= 1e-9);
  CHECK(result.final_residual <= settings.tol);
}

TEST_CASE("solve_shooting: zero RHS lands on c = 0") {
  auto zero = std::make_shared<NativeRhs>(
      "zero", [](int, double, const StateView&) { return 0.0; },
      CouplingBand{0, 0});
  ProblemSpec spec = make_spec(zero, mass_family(0.5, 0.5, 1.0), nullptr, 1.0,
                               2.0, 0.05, 1, 1);
  SolveResult result = solve_shooting(spec, ShootingSettings{});
  CHECK(result.trajectory.sup_norm() <= 1e-14);
}

TEST_CASE("residual is exactly affine in c for linear systems") {
  auto rhs = make_finite_affine({{"0", "0.3"}, {"0.2", "0.1"}},
                                {"1", "t"});
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{{0.25, 0.3}}, PiecewisePoly{},
                       1.0);
  entries.emplace_back(std::vector<PointMass>{{0.5, -0.4}}, PiecewisePoly{},
                       1.0);
  auto family = std::make_shared<ListFunctionalFamily>(std::move(entries));
  ProblemSpec spec = make_spec(rhs, family, nullptr, 1.0, 2.0, 0.01, 2, 2);

  Rng rng(17);
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<double> c1{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    std::vector<double> c2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    std::vector<double> d{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    auto shifted = [&](const std::vector<double>& c) {
      std::vector<double> out(c);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += d[i];
      return out;
    };
    std::vector<double> f1 = shoot_residual(c1, spec).F;
    std::vector<double> f1d = shoot_residual(shifted(c1), spec).F;
    std::vector<double> f2 = shoot_residual(c2, spec).F;
    std::vector<double> f2d = shoot_residual(shifted(c2), spec).F;
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(f1d[i] - f1[i] ==
            doctest::Approx(f2d[i] - f2[i]).epsilon(1e-12));
  }
}

TEST_CASE("x-independent RHS: Newton reaches the root from any start") {
  // F is affine with slope diag(1 - <alpha_n,1>), so the first Newton step
  // (taken right after the fixed-point warm-up) is exact.
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.01);
  std::vector<double> F_far = shoot_residual(std::vector<double>{7.0}, spec).F;
  std::vector<double> F_near = shoot_residual(std::vector<double>{7.1}, spec).F;
  // slope check: dF = (1 - <alpha,1>) dc
  CHECK(F_near[0] - F_far[0] == doctest::Approx(0.5 * 0.1).epsilon(1e-10));

  ShootingSettings settings;
  SolveResult result = solve_shooting(spec, settings);
  CHECK(result.iterations <= 3);
}

TEST_CASE("dimension cap: large systems fall back to the fixed-point map") {
  ProblemSpec spec = example35_spec(0.5, 1.0, 1.5, 0.01, 70, 2);
  ShootingSettings settings;
  settings.tol = 1e-9;
  settings.max_iter = 200;
  SolveResult result = solve_shooting(spec, settings);
  CHECK(result.final_residual <= settings.tol);
  CHECK(result.iterations > 3);  // no Newton acceleration above the cap
}

TEST_CASE("disable_newton exercises the damped fixed-point path") {
  ProblemSpec spec = constant_oracle_spec(1.0, 2.0, 0.01);
  ShootingSettings settings;
  settings.disable_newton = true;
  settings.max_iter = 200;
  SolveResult result = solve_shooting(spec, settings);
  CHECK(result.final_residual <= settings.tol);
  std::size_t last = result.trajectory.node_count() - 1;
  CHECK(result.trajectory.value(last, 1) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("both solvers agree on every builtin where both converge") {
  // example35 and the constant oracle are covered by the acceptance suite;
  // here: the uncoupled exponential and the finite affine system.
  auto agree = [](const ProblemSpec& spec, double tol) {
    PicardSettings ps;
    ps.tol = tol;
    ps.max_iter = 400;
    ShootingSettings ss;
    ss.tol = tol;
    SolveResult a = solve_picard(spec, ps);
    SolveResult b = solve_shooting(spec, ss);
    return a.trajectory.sup_distance(b.trajectory);
  };

  ProblemSpec exp_spec = uncoupled_exp_spec(1.0, 2.0, 1e-3, 2);
  CHECK(agree(exp_spec, 1e-11) <= 1e-5);  // trapezoid-vs-RK4 h^2 gap

  auto rhs = make_finite_affine({{"0", "0.3"}, {"0.2", "0.1"}}, {"1", "t"});
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{{0.25, 0.3}}, PiecewisePoly{},
                       1.0);
  entries.emplace_back(std::vector<PointMass>{{0.5, -0.4}}, PiecewisePoly{},
                       1.0);
  auto family = std::make_shared<ListFunctionalFamily>(std::move(entries));
  ProblemSpec affine = make_spec(rhs, family, nullptr, 1.0, 2.0, 1e-3, 2, 2);
  CHECK(agree(affine, 1e-11) <= 1e-5);
}

TEST_CASE("lu solver: regular systems solve, singular ones report failure") {
  std::vector<double> J{2.0, 1.0, 1.0, 3.0};
  std::vector<double> rhs{5.0, 10.0};
  REQUIRE(lu_solve_inplace(J, rhs, 2));
  CHECK(rhs[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rhs[1] == doctest::Approx(3.0).epsilon(1e-14));

  std::vector<double> S{1.0, 2.0, 2.0, 4.0};
  std::vector<double> r{1.0, 2.0};
  CHECK_FALSE(lu_solve_inplace(S, r, 2));

  std::vector<double> Z{0.0};
  std::vector<double> rz{1.0};
  CHECK_FALSE(lu_solve_inplace(Z, rz, 1));
}

TEST_CASE("solve_shooting rejects <alpha,1> = 1 up front") {
  auto one = std::make_shared<NativeRhs>(
      "one", [](int, double, const StateView&) { return 1.0; },
      CouplingBand{0, 0});
  ProblemSpec bad = make_spec(one, mass_family(0.5, 1.0, 1.0), nullptr, 1.0,
                              2.0, 0.25, 1, 1);
  CHECK_THROWS_AS(solve_shooting(bad, ShootingSettings{}),
                  HypothesisViolation);
}

TEST_CASE("solve_shooting reports non-convergence with history") {
  ProblemSpec spec = example35_spec(0.5, 1.0, 2.0, 0.05, 4, 2);
  ShootingSettings settings;
  settings.max_iter = 2;
  settings.tol = 1e-14;
  try {
    solve_shooting(spec, settings);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.residual_history().size() == 2);
  }
}

}  // TEST_SUITE
