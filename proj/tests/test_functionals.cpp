#include <doctest.h>

#include <cmath>

#include "nlivp/errors.hpp"
#include "nlivp/functional.hpp"
#include "nlivp/poly.hpp"
#include "nlivp/rng.hpp"

using namespace nlivp;

namespace {

std::shared_ptr<const Grid> grid_of(double t_max, double h,
                                    std::vector<double> snap = {}) {
  return std::make_shared<Grid>(Grid::uniform(t_max, h, snap));
}

StridedColumn column_of(const std::vector<double>& v) {
  return StridedColumn{v.data(), 1, v.size()};
}

std::vector<double> sample(const Grid& g, double (*fn)(double)) {
  std::vector<double> out;
  for (double t : g.nodes()) out.push_back(fn(t));
  return out;
}

PiecewisePoly const_density(double c, double t0) {
  PiecewisePoly w;
  w.pieces.push_back(PolyPiece{0.0, t0, {c}});
  return w;
}

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("polynomial roots and split integrals") {
  // (s - 0.25)(s - 0.75) = 3/16 - s + s^2
  std::vector<double> q{3.0 / 16.0, -1.0, 1.0};
  std::vector<double> roots = poly_real_roots_in(q, 0.0, 1.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(0.75).epsilon(1e-12));

  // Brute-force Riemann oracle for the |.| integral.
  double brute = 0.0;
  const int cells = 2'000'000;
  for (int i = 0; i < cells; ++i) {
    double s = (i + 0.5) / cells;
    brute += std::abs(poly_value(q, s)) / cells;
  }
  CHECK(poly_abs_integral(q, 0.0, 1.0) ==
        doctest::Approx(brute).epsilon(1e-9));

  // Linear sign change: integral of |s - 0.5| over [0,1] is 1/4.
  std::vector<double> lin{-0.5, 1.0};
  CHECK(poly_abs_integral(lin, 0.0, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(poly_integral(lin, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-16));

  CHECK(poly_min_on(q, 0.0, 1.0) ==
        doctest::Approx(poly_value(q, 0.5)).epsilon(1e-12));
}

TEST_CASE("polynomial roots: cubic, double root, and constants") {
  // (s - 0.2)(s - 0.5)(s - 0.9) expanded.
  std::vector<double> cubic{-0.09, 0.73, -1.6, 1.0};
  std::vector<double> roots = poly_real_roots_in(cubic, 0.0, 1.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(roots[2] == doctest::Approx(0.9).epsilon(1e-10));

  double brute = 0.0;
  const int cells = 400'000;
  for (int i = 0; i < cells; ++i) {
    double s = (i + 0.5) / cells;
    brute += std::abs(poly_value(cubic, s)) / cells;
  }
  CHECK(poly_abs_integral(cubic, 0.0, 1.0) ==
        doctest::Approx(brute).epsilon(1e-8));

  // (s - 0.5)^2 touches zero without a sign change: |p| integrates like p.
  std::vector<double> square{0.25, -1.0, 1.0};
  CHECK(poly_abs_integral(square, 0.0, 1.0) ==
        doctest::Approx(poly_integral(square, 0.0, 1.0)).epsilon(1e-12));

  // Constants and the zero polynomial have no interior roots.
  std::vector<double> constant{3.0};
  CHECK(poly_real_roots_in(constant, 0.0, 1.0).empty());
  std::vector<double> zero{0.0, 0.0};
  CHECK(poly_real_roots_in(zero, 0.0, 1.0).empty());
  CHECK(poly_abs_integral(zero, 0.0, 1.0) == 0.0);
}

TEST_CASE("apply: point mass at an exact node") {
  auto g = grid_of(1.0, 0.25);
  std::vector<double> v = sample(*g, [](double t) { return t; });
  StieltjesFunctional alpha({{0.5, 0.5}}, {}, 1.0);
  CHECK(apply(alpha, *g, column_of(v)) == 0.25);
}

TEST_CASE("apply: trapezoid is exact for linear integrands") {
  for (double h : {0.25, 0.3, 0.125}) {
    auto g = grid_of(1.0, h, {1.0});
    std::vector<double> v = sample(*g, [](double t) { return t; });
    StieltjesFunctional alpha({}, const_density(1.0, 1.0), 1.0);
    CHECK(apply(alpha, *g, column_of(v)) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("apply: constant density against the constant function") {
  // <alpha_1, 1> with density 1/(n+t0), n=1, t0=1.
  auto g = grid_of(1.0, 0.125);
  std::vector<double> ones(g->node_count(), 1.0);
  StieltjesFunctional alpha({}, const_density(1.0 / 2.0, 1.0), 1.0);
  CHECK(apply(alpha, *g, column_of(ones)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(apply(alpha, *g, column_of(ones)) ==
        doctest::Approx(alpha.one_value()).epsilon(1e-14));
}

TEST_CASE("one_value closed forms") {
  StieltjesFunctional mass({{0.5, 0.5}}, {}, 1.0);
  CHECK(mass.one_value() == 0.5);

  StieltjesFunctional density({}, const_density(1.0 / 3.0, 1.0), 1.0);
  CHECK(density.one_value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  StieltjesFunctional empty({}, {}, 1.0);
  CHECK(empty.one_value() == 0.0);
  CHECK(empty.dual_norm() == 0.0);
}

TEST_CASE("dual norm: total variation of atoms plus density") {
  StieltjesFunctional masses({{0.2, 1.0}, {0.8, -1.0}}, {}, 1.0);
  CHECK(masses.dual_norm() == 2.0);
  CHECK(masses.one_value() == 0.0);

  StieltjesFunctional density({}, const_density(0.5, 1.0), 1.0);
  CHECK(density.dual_norm() == doctest::Approx(0.5).epsilon(1e-15));

  // A density that changes sign contributes its |.| integral.
  PiecewisePoly w;
  w.pieces.push_back(PolyPiece{0.0, 1.0, {-0.5, 1.0}});  // s - 1/2
  StieltjesFunctional mixed({{0.25, -0.75}}, std::move(w), 1.0);
  CHECK(mixed.dual_norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mixed.one_value() == doctest::Approx(-0.75).epsilon(1e-14));
}

TEST_CASE("apply is linear and bounded by the dual norm") {
  auto g = grid_of(1.0, 0.01);
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PointMass> masses;
    int n_masses = static_cast<int>(rng.next_u64() % 3);
    for (int m = 0; m < n_masses; ++m) {
      std::size_t idx = rng.next_u64() % g->node_count();
      masses.push_back(PointMass{g->node(idx), rng.uniform(-2.0, 2.0)});
    }
    PiecewisePoly w;
    w.pieces.push_back(
        PolyPiece{0.0, 1.0, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}});
    StieltjesFunctional alpha(masses, std::move(w), 1.0);

    std::vector<double> u(g->node_count()), v(g->node_count());
    for (double& x : u) x = rng.uniform(-3.0, 3.0);
    for (double& x : v) x = rng.uniform(-3.0, 3.0);
    double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);

    std::vector<double> au_bv(g->node_count());
    double sup_v = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      au_bv[i] = a * u[i] + b * v[i];
      sup_v = std::max(sup_v, std::abs(v[i]));
    }

    double lhs = apply(alpha, *g, column_of(au_bv));
    double rhs = a * apply(alpha, *g, column_of(u)) +
                 b * apply(alpha, *g, column_of(v));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // Quadrature slack O(h^2) on the density part.
    double bound = alpha.dual_norm() * sup_v;
    CHECK(std::abs(apply(alpha, *g, column_of(v))) <= bound + 1e-4 * (1 + bound));
  }
}

TEST_CASE("apply rejects off-grid abscissae and short samples") {
  auto g = grid_of(1.0, 0.25);
  std::vector<double> v(g->node_count(), 1.0);
  StieltjesFunctional alpha({{0.33, 1.0}}, {}, 1.0);
  CHECK_THROWS_AS(apply(alpha, *g, column_of(v)), ConfigError);

  StieltjesFunctional ok({{0.5, 1.0}}, {}, 1.0);
  std::vector<double> short_v{1.0};
  CHECK_THROWS_AS(apply(ok, *g, column_of(short_v)), IndexError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(StieltjesFunctional({{1.5, 1.0}}, {}, 1.0), ConfigError);
  CHECK_THROWS_AS(StieltjesFunctional({{-0.1, 1.0}}, {}, 1.0), ConfigError);

  PiecewisePoly overlapping;
  overlapping.pieces.push_back(PolyPiece{0.0, 0.6, {1.0}});
  overlapping.pieces.push_back(PolyPiece{0.5, 1.0, {1.0}});
  CHECK_THROWS_AS(StieltjesFunctional({}, overlapping, 1.0), ConfigError);

  PiecewisePoly outside;
  outside.pieces.push_back(PolyPiece{0.0, 1.5, {1.0}});
  CHECK_THROWS_AS(StieltjesFunctional({}, outside, 1.0), ConfigError);
}

TEST_CASE("list family with and without tail repetition") {
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{{0.25, 0.5}}, PiecewisePoly{},
                       1.0);
  entries.emplace_back(std::vector<PointMass>{{0.5, -0.25}}, PiecewisePoly{},
                       1.0);

  ListFunctionalFamily strict(entries, false);
  CHECK(strict.make(2).one_value() == -0.25);
  CHECK_THROWS_AS(strict.make(3), ConfigError);

  ListFunctionalFamily padded(entries, true);
  CHECK(padded.make(7).one_value() == -0.25);
  CHECK_THROWS_AS(padded.make(0), IndexError);
}

}  // TEST_SUITE
