#pragma once

#include <span>

#include "nlivp/rhs.hpp"
#include "nlivp/state.hpp"

namespace nlivp {

/// Which implementation of the data-parallel kernels to run. The serial
/// variants are the reference implementation; the OpenMP variants must
/// produce bit-identical results (no cross-thread reassociation anywhere),
/// which the kernel tests assert.
enum class ExecPolicy { serial, openmp };

/// openmp when compiled with OpenMP support, serial otherwise.
ExecPolicy default_policy();

namespace kernels {

/// rates[i*N + (n-1)] = f_n(nodes[i], values[i*N + .]) for every node i and
/// component n = 1..N. Parallel over nodes. EvaluationError is annotated
/// with (t, component).
void rhs_sweep(ExecPolicy policy, const RhsFamily& rhs, Closure closure,
               std::span<const double> nodes, std::span<const double> values,
               int n_components, std::span<double> rates);

/// Per-component cumulative composite trapezoid down the node axis:
/// out(0) = 0, out(i) = out(i-1) + (s_i - s_{i-1}) * (r_{i-1} + r_i) / 2.
/// Parallel over components; each component's scan stays sequential.
void cumulative_trapezoid(ExecPolicy policy, std::span<const double> nodes,
                          std::span<const double> rates, int n_components,
                          std::span<double> out);

/// Classical fixed-step RK4 over the (possibly non-uniform) grid, writing
/// every row of the trajectory; out row 0 is the initial vector. Stage
/// sweeps are parallel over components.
void rk4_integrate(ExecPolicy policy, const RhsFamily& rhs, Closure closure,
                   std::span<const double> nodes,
                   std::span<const double> initial, std::span<double> out);

/// out = (1 - lambda) * a + lambda * b, elementwise.
void blend(ExecPolicy policy, std::span<const double> a,
           std::span<const double> b, double lambda, std::span<double> out);

}  // namespace kernels

}  // namespace nlivp
