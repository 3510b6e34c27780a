#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nlivp/grid.hpp"
#include "nlivp/poly.hpp"
#include "nlivp/trajectory.hpp"

namespace nlivp {

struct PointMass {
  double t = 0.0;
  double weight = 0.0;
};

/// Continuous linear functional on C[0, t0] in Stieltjes form:
///   <alpha, v> = sum_k eta_k v(t_k) + integral_0^t0 v(s) w(s) ds
/// with finitely many point masses and a piecewise-polynomial density w.
class StieltjesFunctional {
 public:
  StieltjesFunctional(std::vector<PointMass> masses, PiecewisePoly density,
                      double t0);

  double t0() const { return t0_; }
  std::span<const PointMass> point_masses() const { return masses_; }
  const PiecewisePoly& density() const { return density_; }

  /// <alpha, 1>: sum of weights plus the exact density integral.
  double one_value() const;
  /// Total variation of the representing measure:
  /// sum |eta_k| + integral |w|, both exact.
  double dual_norm() const;

  /// Grid nodes this functional needs: mass abscissae and density
  /// breakpoints.
  std::vector<double> required_nodes() const;

 private:
  std::vector<PointMass> masses_;
  PiecewisePoly density_;
  double t0_;
};

/// <alpha, v> for a component column sampled on the grid. The point masses
/// are read at their exact nodes (ConfigError if one is missing); the density
/// part is composite trapezoid of v*w over the nodes in [0, t0].
double apply(const StieltjesFunctional& alpha, const Grid& grid,
             StridedColumn v);

/// A family alpha_n, one functional per component index (1-based).
class FunctionalFamily {
 public:
  virtual ~FunctionalFamily() = default;
  virtual StieltjesFunctional make(int n) const = 0;
};

/// Explicit list; with `repeat_last`, indices beyond the list reuse the
/// final entry (the padded-system layout).
class ListFunctionalFamily : public FunctionalFamily {
 public:
  ListFunctionalFamily(std::vector<StieltjesFunctional> entries,
                       bool repeat_last = false);
  StieltjesFunctional make(int n) const override;
  int list_size() const { return static_cast<int>(entries_.size()); }

 private:
  std::vector<StieltjesFunctional> entries_;
  bool repeat_last_;
};

}  // namespace nlivp
