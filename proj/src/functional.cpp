#include "nlivp/functional.hpp"

#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

StieltjesFunctional::StieltjesFunctional(std::vector<PointMass> masses,
                                         PiecewisePoly density, double t0)
    : masses_(std::move(masses)), density_(std::move(density)), t0_(t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0))
    throw ConfigError("functional t0 must be positive and finite");
  for (const PointMass& m : masses_) {
    if (!std::isfinite(m.t) || !std::isfinite(m.weight))
      throw ConfigError("point mass entries must be finite");
    if (m.t < 0.0 || m.t > t0)
      throw ConfigError("point-mass abscissa " + std::to_string(m.t) +
                        " outside [0, t0]");
  }
  density_.validate(0.0, t0);
}

double StieltjesFunctional::one_value() const {
  double acc = 0.0;
  for (const PointMass& m : masses_) acc += m.weight;
  return acc + density_.integral();
}

double StieltjesFunctional::dual_norm() const {
  double acc = 0.0;
  for (const PointMass& m : masses_) acc += std::abs(m.weight);
  return acc + density_.abs_integral();
}

std::vector<double> StieltjesFunctional::required_nodes() const {
  std::vector<double> out;
  for (const PointMass& m : masses_) out.push_back(m.t);
  for (double b : density_.breakpoints()) out.push_back(b);
  return out;
}

double apply(const StieltjesFunctional& alpha, const Grid& grid,
             StridedColumn v) {
  double acc = 0.0;
  for (const PointMass& m : alpha.point_masses()) {
    std::size_t i = grid.index_of(m.t);
    if (i >= v.count)
      throw IndexError("sampled function does not cover abscissa t=" +
                       std::to_string(m.t));
    acc += m.weight * v[i];
  }
  if (!alpha.density().empty()) {
    std::size_t i0 = grid.index_of(alpha.t0());
    if (i0 >= v.count)
      throw IndexError("sampled function does not cover [0, t0]");
    std::span<const double> nodes = grid.nodes();
    double integral = 0.0;
    double prev = v[0] * alpha.density().value(nodes[0]);
    for (std::size_t i = 1; i <= i0; ++i) {
      double cur = v[i] * alpha.density().value(nodes[i]);
      integral += 0.5 * (nodes[i] - nodes[i - 1]) * (prev + cur);
      prev = cur;
    }
    acc += integral;
  }
  return acc;
}

ListFunctionalFamily::ListFunctionalFamily(
    std::vector<StieltjesFunctional> entries, bool repeat_last)
    : entries_(std::move(entries)), repeat_last_(repeat_last) {
  if (entries_.empty())
    throw ConfigError("functional family must not be empty");
}

StieltjesFunctional ListFunctionalFamily::make(int n) const {
  if (n < 1) throw IndexError("functional index must be >= 1");
  auto size = static_cast<int>(entries_.size());
  if (n > size) {
    if (!repeat_last_)
      throw ConfigError("no functional declared for component " +
                        std::to_string(n) + " (list has " +
                        std::to_string(size) + ")");
    n = size;
  }
  return entries_[static_cast<std::size_t>(n - 1)];
}

}  // namespace nlivp
