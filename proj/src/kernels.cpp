#include "nlivp/kernels.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <vector>

#include "nlivp/errors.hpp"

namespace nlivp {

ExecPolicy default_policy() {
#ifdef _OPENMP
  return ExecPolicy::openmp;
#else
  return ExecPolicy::serial;
#endif
}

namespace kernels {

namespace {

// Re-raise a DSL/native evaluation failure with its sweep location attached.
[[noreturn]] void rethrow_located(const std::exception_ptr& ep, double t,
                                  int component) {
  try {
    std::rethrow_exception(ep);
  } catch (const EvaluationError& e) {
    if (e.t()) throw;  // already located
    throw EvaluationError(e.what(), t, component);
  }
}

void eval_row(const RhsFamily& rhs, Closure closure, double t,
              std::span<const double> state, int n_components,
              double* out_row) {
  StateView view(state, closure);
  for (int n = 1; n <= n_components; ++n) {
    double v;
    try {
      v = rhs.eval(n, t, view);
    } catch (const EvaluationError&) {
      rethrow_located(std::current_exception(), t, n);
    }
    if (!std::isfinite(v))
      throw EvaluationError("RHS produced a non-finite value", t, n);
    out_row[n - 1] = v;
  }
}

}  // namespace

void rhs_sweep(ExecPolicy policy, const RhsFamily& rhs, Closure closure,
               std::span<const double> nodes, std::span<const double> values,
               int n_components, std::span<double> rates) {
  const auto rows = static_cast<std::ptrdiff_t>(nodes.size());
  const auto n = static_cast<std::size_t>(n_components);
  if (values.size() != nodes.size() * n || rates.size() != values.size())
    throw InternalError("rhs_sweep: buffer sizes do not match");

  if (policy == ExecPolicy::serial) {
    for (std::ptrdiff_t i = 0; i < rows; ++i)
      eval_row(rhs, closure, nodes[static_cast<std::size_t>(i)],
               values.subspan(static_cast<std::size_t>(i) * n, n),
               n_components, rates.data() + static_cast<std::size_t>(i) * n);
    return;
  }

  std::atomic<bool> failed{false};
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      eval_row(rhs, closure, nodes[static_cast<std::size_t>(i)],
               values.subspan(static_cast<std::size_t>(i) * n, n),
               n_components, rates.data() + static_cast<std::size_t>(i) * n);
    } catch (...) {
#pragma omp critical(nlivp_rhs_sweep_failure)
      {
        if (!failure) failure = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void cumulative_trapezoid(ExecPolicy policy, std::span<const double> nodes,
                          std::span<const double> rates, int n_components,
                          std::span<double> out) {
  const std::size_t rows = nodes.size();
  const auto n = static_cast<std::size_t>(n_components);
  if (rates.size() != rows * n || out.size() != rates.size())
    throw InternalError("cumulative_trapezoid: buffer sizes do not match");

  auto scan_component = [&](std::size_t j) {
    double acc = 0.0;
    out[j] = 0.0;
    for (std::size_t i = 1; i < rows; ++i) {
      acc += 0.5 * (nodes[i] - nodes[i - 1]) *
             (rates[(i - 1) * n + j] + rates[i * n + j]);
      out[i * n + j] = acc;
    }
  };

  if (policy == ExecPolicy::serial) {
    for (std::size_t j = 0; j < n; ++j) scan_component(j);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
    scan_component(static_cast<std::size_t>(j));
}

void rk4_integrate(ExecPolicy policy, const RhsFamily& rhs, Closure closure,
                   std::span<const double> nodes,
                   std::span<const double> initial, std::span<double> out) {
  const std::size_t rows = nodes.size();
  const std::size_t n = initial.size();
  const int nc = static_cast<int>(n);
  if (out.size() != rows * n)
    throw InternalError("rk4_integrate: buffer sizes do not match");

  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
  const bool parallel = policy == ExecPolicy::openmp;

  auto stage_eval = [&](double t, std::span<const double> y,
                        std::vector<double>& k) {
    if (!parallel || nc < 64) {
      eval_row(rhs, closure, t, y, nc, k.data());
      return;
    }
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    StateView view(y, closure);
#pragma omp parallel for schedule(static)
    for (int c = 1; c <= nc; ++c) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        double v = rhs.eval(c, t, view);
        if (!std::isfinite(v))
          throw EvaluationError("RHS produced a non-finite value", t, c);
        k[static_cast<std::size_t>(c - 1)] = v;
      } catch (const EvaluationError& e) {
#pragma omp critical(nlivp_rk4_failure)
        {
          if (!failure)
            failure = e.t() ? std::current_exception()
                            : std::make_exception_ptr(
                                  EvaluationError(e.what(), t, c));
          failed.store(true, std::memory_order_relaxed);
        }
      } catch (...) {
#pragma omp critical(nlivp_rk4_failure)
        {
          if (!failure) failure = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  };

  for (std::size_t j = 0; j < n; ++j) out[j] = initial[j];
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    const double t = nodes[i];
    const double h = nodes[i + 1] - nodes[i];
    std::span<const double> y(out.data() + i * n, n);

    stage_eval(t, y, k1);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * h * k1[j];
    stage_eval(t + 0.5 * h, stage, k2);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * h * k2[j];
    stage_eval(t + 0.5 * h, stage, k3);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + h * k3[j];
    stage_eval(t + h, stage, k4);

    double* next = out.data() + (i + 1) * n;
    for (std::size_t j = 0; j < n; ++j)
      next[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
}

void blend(ExecPolicy policy, std::span<const double> a,
           std::span<const double> b, double lambda, std::span<double> out) {
  if (a.size() != b.size() || out.size() != a.size())
    throw InternalError("blend: buffer sizes do not match");
  const auto size = static_cast<std::ptrdiff_t>(a.size());
  if (policy == ExecPolicy::serial) {
    for (std::ptrdiff_t i = 0; i < size; ++i)
      out[static_cast<std::size_t>(i)] =
          (1.0 - lambda) * a[static_cast<std::size_t>(i)] +
          lambda * b[static_cast<std::size_t>(i)];
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i)
    out[static_cast<std::size_t>(i)] =
        (1.0 - lambda) * a[static_cast<std::size_t>(i)] +
        lambda * b[static_cast<std::size_t>(i)];
}

}  // namespace kernels

}  // namespace nlivp
