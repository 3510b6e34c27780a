#include "nlivp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

Grid::Grid(double t_max, double h, std::vector<double> nodes)
    : t_max_(t_max), h_(h), nodes_(std::move(nodes)) {}

Grid Grid::uniform(double t_max, double h, std::span<const double> snap_nodes) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw ConfigError("grid t_max must be positive and finite");
  if (!(h > 0.0) || !std::isfinite(h))
    throw ConfigError("grid step h must be positive and finite");
  if (h > t_max) throw ConfigError("grid step h must not exceed t_max");

  const double tol = 1e-12 * std::max(1.0, t_max);

  std::vector<double> nodes;
  auto count = static_cast<std::size_t>(std::floor(t_max / h + tol));
  nodes.reserve(count + snap_nodes.size() + 2);
  for (std::size_t k = 0; k <= count; ++k)
    nodes.push_back(static_cast<double>(k) * h);
  if (t_max - nodes.back() > tol)
    nodes.push_back(t_max);
  else
    nodes.back() = t_max;

  for (double v : snap_nodes) {
    if (!std::isfinite(v) || v < 0.0 || v > t_max)
      throw ConfigError("snap node " + std::to_string(v) +
                        " outside [0, t_max]");
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v - tol);
    if (it != nodes.end() && std::abs(*it - v) <= tol)
      *it = v;  // replace the rounded lattice node with the exact value
    else
      nodes.insert(it, v);
  }
  nodes.front() = 0.0;

  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw InternalError("grid nodes not strictly increasing");

  return Grid(t_max, h, std::move(nodes));
}

std::size_t Grid::index_of(double t) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end() || *it != t)
    throw ConfigError("t=" + std::to_string(t) + " is not a grid node");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Grid::has_node(double t) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  return it != nodes_.end() && *it == t;
}

std::vector<double> trapezoid_weights(std::span<const double> nodes,
                                      std::size_t count) {
  if (count == 0 || count > nodes.size())
    throw IndexError("trapezoid_weights: bad node count");
  std::vector<double> w(count, 0.0);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    double half = 0.5 * (nodes[i + 1] - nodes[i]);
    w[i] += half;
    w[i + 1] += half;
  }
  return w;
}

}  // namespace nlivp
