#include "nlivp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

Trajectory::Trajectory(std::shared_ptr<const Grid> grid, int n_components,
                       std::vector<double> values)
    : grid_(std::move(grid)),
      n_components_(n_components),
      values_(std::move(values)) {
  if (!grid_) throw InternalError("trajectory needs a grid");
  if (n_components_ < 1)
    throw ConfigError("trajectory needs at least one component");
  if (values_.size() != grid_->node_count() * static_cast<std::size_t>(n_components_))
    throw InternalError("trajectory value buffer has wrong size");
  for (double v : values_)
    if (!std::isfinite(v))
      throw EvaluationError("trajectory contains a non-finite value");
}

Trajectory Trajectory::zero(std::shared_ptr<const Grid> grid,
                            int n_components) {
  if (!grid) throw InternalError("trajectory needs a grid");
  std::vector<double> values(
      grid->node_count() * static_cast<std::size_t>(n_components), 0.0);
  return Trajectory(std::move(grid), n_components, std::move(values));
}

double Trajectory::value(std::size_t i, int n) const {
  if (n < 1 || n > n_components_)
    throw IndexError("component index " + std::to_string(n) +
                     " out of range 1.." + std::to_string(n_components_));
  return values_[i * static_cast<std::size_t>(n_components_) +
                 static_cast<std::size_t>(n - 1)];
}

std::span<const double> Trajectory::row(std::size_t i) const {
  auto n = static_cast<std::size_t>(n_components_);
  return std::span<const double>(values_.data() + i * n, n);
}

StridedColumn Trajectory::component(int n) const {
  if (n < 1 || n > n_components_)
    throw IndexError("component index " + std::to_string(n) +
                     " out of range 1.." + std::to_string(n_components_));
  return StridedColumn{values_.data() + (n - 1),
                       static_cast<std::size_t>(n_components_), node_count()};
}

Trajectory Trajectory::blend(const Trajectory& other, double lambda) const {
  if (grid_->nodes().size() != other.grid_->nodes().size() ||
      n_components_ != other.n_components_)
    throw InternalError("blend of mismatched trajectories");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (1.0 - lambda) * values_[i] + lambda * other.values_[i];
  return Trajectory(grid_, n_components_, std::move(out));
}

Trajectory Trajectory::difference(const Trajectory& other,
                                  int components) const {
  if (grid_->node_count() != other.grid_->node_count())
    throw InternalError("difference of trajectories on different grids");
  int shared = std::min(n_components_, other.n_components_);
  int m = components < 0 ? shared : components;
  if (m < 1 || m > shared)
    throw IndexError("difference: component count out of range");
  std::size_t rows = node_count();
  std::vector<double> out(rows * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < rows; ++i) {
    std::span<const double> a = row(i);
    std::span<const double> b = other.row(i);
    for (int j = 0; j < m; ++j)
      out[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)];
  }
  return Trajectory(grid_, m, std::move(out));
}

Trajectory Trajectory::head_components(int n) const {
  if (n < 1 || n > n_components_)
    throw IndexError("head_components: count out of range");
  std::size_t rows = node_count();
  std::vector<double> out(rows * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rows; ++i) {
    std::span<const double> a = row(i);
    for (int j = 0; j < n; ++j)
      out[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(j)];
  }
  return Trajectory(grid_, n, std::move(out));
}

double Trajectory::sup_norm() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

double Trajectory::sup_distance(const Trajectory& other) const {
  if (grid_->node_count() != other.grid_->node_count())
    throw InternalError("sup_distance of trajectories on different grids");
  int shared = std::min(n_components_, other.n_components_);
  double best = 0.0;
  for (std::size_t i = 0; i < node_count(); ++i) {
    std::span<const double> a = row(i);
    std::span<const double> b = other.row(i);
    for (int j = 0; j < shared; ++j)
      best = std::max(best, std::abs(a[static_cast<std::size_t>(j)] -
                                     b[static_cast<std::size_t>(j)]));
  }
  return best;
}

}  // namespace nlivp
