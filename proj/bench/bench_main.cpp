// Timing harness comparing the serial reference kernels against the OpenMP
// variants on representative problem sizes. Not part of the test suite.
//
//   nlivp_bench [n_components] [n_nodes] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "nlivp/builtin.hpp"
#include "nlivp/grid.hpp"
#include "nlivp/kernels.hpp"
#include "nlivp/rng.hpp"

using namespace nlivp;

namespace {

double time_once(const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) best = std::min(best, time_once(body));
  return best;
}

void row(const char* name, double serial_ms, double openmp_ms) {
  std::printf("%-28s %12.3f %12.3f %9.2fx\n", name, serial_ms, openmp_ms,
              serial_ms / openmp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 128;
  const std::size_t nodes_target = argc > 2
                                       ? static_cast<std::size_t>(
                                             std::atoll(argv[2]))
                                       : 20001;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

  const double t_max = 2.0;
  const double h = t_max / static_cast<double>(nodes_target - 1);
  Grid grid = Grid::uniform(t_max, h, std::vector<double>{1.0});
  const std::size_t rows = grid.node_count();

  // DSL-backed coupled RHS: the expensive per-evaluation path.
  dsl::ParamTable params;
  params.scalars["t0"] = 1.0;
  dsl::SequenceParam k;
  k.rule = std::make_shared<dsl::Expr>(dsl::Expr::parse("0.5"));
  params.sequences["k"] = std::move(k);
  DslGeneratorRhs dsl_rhs(dsl::Expr::parse("k[n]/(1+t^2)*x[n] + t*cos(x[n+1])"),
                          std::move(params));

  KSequence ks;
  ks.constant = 0.5;
  BuiltinProblem native = make_example35(ks, 1.0);

  Rng rng(1);
  std::vector<double> values(rows * static_cast<std::size_t>(n));
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  std::vector<double> out(values.size());
  std::vector<double> initial(static_cast<std::size_t>(n), 0.1);

  std::printf("kernel benchmark: N=%d components, %zu nodes, best of %d\n\n",
              n, rows, repeats);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms",
              "speedup");

  row("rhs_sweep (expression)",
      best_of(repeats,
              [&] {
                kernels::rhs_sweep(ExecPolicy::serial, dsl_rhs, Closure::zero,
                                   grid.nodes(), values, n, out);
              }),
      best_of(repeats, [&] {
        kernels::rhs_sweep(ExecPolicy::openmp, dsl_rhs, Closure::zero,
                           grid.nodes(), values, n, out);
      }));

  row("rhs_sweep (native)",
      best_of(repeats,
              [&] {
                kernels::rhs_sweep(ExecPolicy::serial, *native.rhs,
                                   Closure::zero, grid.nodes(), values, n,
                                   out);
              }),
      best_of(repeats, [&] {
        kernels::rhs_sweep(ExecPolicy::openmp, *native.rhs, Closure::zero,
                           grid.nodes(), values, n, out);
      }));

  row("cumulative_trapezoid",
      best_of(repeats,
              [&] {
                kernels::cumulative_trapezoid(ExecPolicy::serial, grid.nodes(),
                                              values, n, out);
              }),
      best_of(repeats, [&] {
        kernels::cumulative_trapezoid(ExecPolicy::openmp, grid.nodes(), values,
                                      n, out);
      }));

  row("rk4_integrate (native)",
      best_of(repeats,
              [&] {
                kernels::rk4_integrate(ExecPolicy::serial, *native.rhs,
                                       Closure::zero, grid.nodes(), initial,
                                       out);
              }),
      best_of(repeats, [&] {
        kernels::rk4_integrate(ExecPolicy::openmp, *native.rhs, Closure::zero,
                               grid.nodes(), initial, out);
      }));

  std::vector<double> other(values.size());
  for (double& v : other) v = rng.uniform(-1.0, 1.0);
  row("blend",
      best_of(repeats,
              [&] {
                kernels::blend(ExecPolicy::serial, values, other, 0.5, out);
              }),
      best_of(repeats, [&] {
        kernels::blend(ExecPolicy::openmp, values, other, 0.5, out);
      }));

  return 0;
}
