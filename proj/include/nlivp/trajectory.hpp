#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nlivp/grid.hpp"

namespace nlivp {

/// Read-only strided view of one component column of a trajectory.
struct StridedColumn {
  const double* base = nullptr;
  std::size_t stride = 1;
  std::size_t count = 0;

  double operator[](std::size_t i) const { return base[i * stride]; }
};

/// Grid-sampled vector-valued function on [0, t_max]: row i holds the N
/// component values at node i. Immutable after construction; operations
/// return new trajectories, so sharing across threads is safe.
class Trajectory {
 public:
  /// values is row-major with node_count rows and n_components columns.
  /// Every entry must be finite (InternalError otherwise).
  Trajectory(std::shared_ptr<const Grid> grid, int n_components,
             std::vector<double> values);

  static Trajectory zero(std::shared_ptr<const Grid> grid, int n_components);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  int components() const { return n_components_; }
  std::size_t node_count() const { return grid_->node_count(); }

  /// Value of component n (1-based) at node i.
  double value(std::size_t i, int n) const;
  std::span<const double> row(std::size_t i) const;
  std::span<const double> data() const { return values_; }
  StridedColumn component(int n) const;

  /// (1-lambda)*this + lambda*other.
  Trajectory blend(const Trajectory& other, double lambda) const;
  /// this - other over the first `components` columns of each
  /// (components <= both component counts; -1 means all shared columns).
  Trajectory difference(const Trajectory& other, int components = -1) const;
  /// Copy of the first n components.
  Trajectory head_components(int n) const;

  double sup_norm() const;
  /// Entrywise max |a - b| over shared leading components (grids must match).
  double sup_distance(const Trajectory& other) const;

 private:
  std::shared_ptr<const Grid> grid_;
  int n_components_;
  std::vector<double> values_;
};

}  // namespace nlivp
