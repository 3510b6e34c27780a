#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nlivp/errors.hpp"
#include "nlivp/grid.hpp"
#include "nlivp/kernels.hpp"
#include "nlivp/rng.hpp"

using namespace nlivp;

namespace {

// The OpenMP kernels never reassociate floating-point work across threads,
// so serial and parallel runs must agree bit for bit.
bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::shared_ptr<const RhsFamily> coupled_dsl_rhs() {
  dsl::ParamTable params;
  params.scalars["t0"] = 1.0;
  dsl::SequenceParam k;
  k.rule = std::make_shared<dsl::Expr>(dsl::Expr::parse("0.5"));
  params.sequences["k"] = std::move(k);
  return std::make_shared<DslGeneratorRhs>(
      dsl::Expr::parse("k[n]/(1+t^2)*x[n] + t*cos(x[n+1])"),
      std::move(params));
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("rhs sweep: serial and OpenMP agree bitwise") {
  auto rhs = coupled_dsl_rhs();
  Grid grid = Grid::uniform(2.0, 0.02, std::vector<double>{1.0});
  const int n = 7;
  Rng rng(11);
  std::vector<double> values(grid.node_count() * n);
  for (double& v : values) v = rng.uniform(-2.0, 2.0);

  std::vector<double> serial(values.size()), parallel(values.size());
  kernels::rhs_sweep(ExecPolicy::serial, *rhs, Closure::zero, grid.nodes(),
                     values, n, serial);
  kernels::rhs_sweep(ExecPolicy::openmp, *rhs, Closure::zero, grid.nodes(),
                     values, n, parallel);
  CHECK(bitwise_equal(serial, parallel));

  // Spot-check one entry against a direct evaluation.
  StateView row(std::span<const double>(values.data() + 3 * n, n),
                Closure::zero);
  CHECK(serial[3 * n + 2] == rhs->eval(3, grid.node(3), row));
}

TEST_CASE("cumulative trapezoid matches a naive scan and is policy-stable") {
  Grid grid = Grid::uniform(1.0, 0.1, std::vector<double>{0.55});
  const int n = 3;
  Rng rng(5);
  std::vector<double> rates(grid.node_count() * n);
  for (double& v : rates) v = rng.uniform(-1.0, 1.0);

  std::vector<double> serial(rates.size()), parallel(rates.size());
  kernels::cumulative_trapezoid(ExecPolicy::serial, grid.nodes(), rates, n,
                                serial);
  kernels::cumulative_trapezoid(ExecPolicy::openmp, grid.nodes(), rates, n,
                                parallel);
  CHECK(bitwise_equal(serial, parallel));

  // Naive reference scan.
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    CHECK(serial[static_cast<std::size_t>(j)] == 0.0);
    for (std::size_t i = 1; i < grid.node_count(); ++i) {
      acc += 0.5 * (grid.node(i) - grid.node(i - 1)) *
             (rates[(i - 1) * n + static_cast<std::size_t>(j)] +
              rates[i * n + static_cast<std::size_t>(j)]);
      CHECK(serial[i * n + static_cast<std::size_t>(j)] == acc);
    }
  }
}

TEST_CASE("rk4: one hand-checked step and polynomial exactness") {
  // x' = x, one step of h: the classical growth polynomial.
  auto exp_rhs = std::make_shared<NativeRhs>(
      "exp", [](int c, double, const StateView& x) { return x(c); },
      CouplingBand{0, 0});
  std::vector<double> nodes{0.0, 0.25};
  std::vector<double> out(2);
  kernels::rk4_integrate(ExecPolicy::serial, *exp_rhs, Closure::zero, nodes,
                         std::vector<double>{1.0}, out);
  double h = 0.25;
  double expected =
      1.0 + h + h * h / 2.0 + h * h * h / 6.0 + h * h * h * h / 24.0;
  CHECK(out[1] == doctest::Approx(expected).epsilon(1e-16));

  // f(t) = t^2: RK4 integrates cubics exactly, x(1) = 1/3.
  auto t2 = std::make_shared<NativeRhs>(
      "t2", [](int, double t, const StateView&) { return t * t; },
      CouplingBand{0, 0});
  Grid grid = Grid::uniform(1.0, 0.25);
  std::vector<double> traj(grid.node_count());
  kernels::rk4_integrate(ExecPolicy::serial, *t2, Closure::zero, grid.nodes(),
                         std::vector<double>{0.0}, traj);
  CHECK(traj.back() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("rk4: serial and OpenMP agree bitwise on a coupled system") {
  auto rhs = coupled_dsl_rhs();
  Grid grid = Grid::uniform(1.5, 0.05, std::vector<double>{1.0});
  const int n = 5;
  std::vector<double> c{0.1, -0.2, 0.3, -0.4, 0.5};
  std::vector<double> serial(grid.node_count() * n);
  std::vector<double> parallel(serial.size());
  kernels::rk4_integrate(ExecPolicy::serial, *rhs, Closure::zero, grid.nodes(),
                         c, serial);
  kernels::rk4_integrate(ExecPolicy::openmp, *rhs, Closure::zero, grid.nodes(),
                         c, parallel);
  CHECK(bitwise_equal(serial, parallel));
}

TEST_CASE("blend is exact at lambda 0 and 1 and policy-stable") {
  Rng rng(3);
  std::vector<double> a(101), b(101);
  for (double& v : a) v = rng.uniform(-5.0, 5.0);
  for (double& v : b) v = rng.uniform(-5.0, 5.0);
  std::vector<double> s(a.size()), p(a.size());
  kernels::blend(ExecPolicy::serial, a, b, 0.25, s);
  kernels::blend(ExecPolicy::openmp, a, b, 0.25, p);
  CHECK(bitwise_equal(s, p));

  kernels::blend(ExecPolicy::serial, a, b, 1.0, s);
  CHECK(bitwise_equal(s, b));
  kernels::blend(ExecPolicy::serial, a, b, 0.0, s);
  CHECK(bitwise_equal(s, a));
}

TEST_CASE("evaluation failures carry (t, component) under both policies") {
  auto rhs = std::make_shared<DslGeneratorRhs>(dsl::Expr::parse("1/x[n]"),
                                               dsl::ParamTable{});
  Grid grid = Grid::uniform(1.0, 0.5);
  const int n = 2;
  std::vector<double> values(grid.node_count() * n, 0.0);
  std::vector<double> rates(values.size());

  for (ExecPolicy policy : {ExecPolicy::serial, ExecPolicy::openmp}) {
    try {
      kernels::rhs_sweep(policy, *rhs, Closure::zero, grid.nodes(), values, n,
                         rates);
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      REQUIRE(e.t().has_value());
      REQUIRE(e.component().has_value());
      CHECK(*e.component() >= 1);
      CHECK(*e.component() <= n);
    }
  }
}

TEST_CASE("non-finite RHS values are rejected with location") {
  auto rhs = std::make_shared<NativeRhs>(
      "overflow",
      [](int, double t, const StateView&) {
        return t > 0.4 ? std::numeric_limits<double>::infinity() : 0.0;
      },
      CouplingBand{0, 0});
  Grid grid = Grid::uniform(1.0, 0.25);
  std::vector<double> values(grid.node_count(), 0.0);
  std::vector<double> rates(values.size());
  try {
    kernels::rhs_sweep(ExecPolicy::serial, *rhs, Closure::zero, grid.nodes(),
                       values, 1, rates);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    REQUIRE(e.t().has_value());
    CHECK(*e.t() == 0.5);
  }
}

}  // TEST_SUITE
