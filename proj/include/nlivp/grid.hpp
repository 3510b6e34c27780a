#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nlivp {

/// Time grid on [0, t_max]: a uniform lattice of step h with extra nodes
/// snapped in exactly. Restriction points (t0, the seminorm times t_p,
/// point-mass abscissae, density breakpoints) are inserted as nodes so that
/// restrictions and Stieltjes evaluations never interpolate. A lattice node
/// within 1e-12*max(1,t_max) of an inserted value is replaced by the exact
/// value, which absorbs the rounding of k*h.
class Grid {
 public:
  static Grid uniform(double t_max, double h,
                      std::span<const double> snap_nodes = {});

  double t_max() const { return t_max_; }
  /// Nominal lattice step; actual intervals may differ around snapped nodes.
  double step() const { return h_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }

  /// Index of the node exactly equal to t; throws ConfigError if absent.
  std::size_t index_of(double t) const;
  bool has_node(double t) const;

 private:
  Grid(double t_max, double h, std::vector<double> nodes);

  double t_max_;
  double h_;
  std::vector<double> nodes_;
};

/// Composite-trapezoid weights for nodes[0..count-1] (count >= 1).
std::vector<double> trapezoid_weights(std::span<const double> nodes,
                                      std::size_t count);

}  // namespace nlivp
