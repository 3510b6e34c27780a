#pragma once

#include <span>
#include <vector>

namespace nlivp {

/// Horner evaluation of c0 + c1*s + c2*s^2 + ...
double poly_value(std::span<const double> coeffs, double s);

/// Coefficients of the antiderivative with zero constant term.
std::vector<double> poly_antiderivative(std::span<const double> coeffs);

/// Exact integral over [a, b] via the antiderivative.
double poly_integral(std::span<const double> coeffs, double a, double b);

/// Real roots strictly inside (a, b), ascending and deduplicated.
/// Roots of the derivative split the interval into monotone pieces; each
/// sign change is then refined by bisection.
std::vector<double> poly_real_roots_in(std::span<const double> coeffs,
                                       double a, double b);

/// Integral of |p| over [a, b]: split at interior roots, sum |piece integral|.
double poly_abs_integral(std::span<const double> coeffs, double a, double b);

/// Minimum of p over [a, b] (endpoints and interior critical points).
double poly_min_on(std::span<const double> coeffs, double a, double b);

/// One polynomial piece of a piecewise density.
struct PolyPiece {
  double from = 0.0;
  double to = 0.0;
  std::vector<double> coeffs;  // ascending powers

  double value(double s) const { return poly_value(coeffs, s); }
  double integral() const { return poly_integral(coeffs, from, to); }
  double abs_integral() const { return poly_abs_integral(coeffs, from, to); }
};

/// Piecewise polynomial on a union of disjoint intervals; zero outside them.
/// Pieces must be ascending and non-overlapping (validated by `validate`).
struct PiecewisePoly {
  std::vector<PolyPiece> pieces;

  bool empty() const;
  /// Value at s; zero outside every piece.
  double value(double s) const;
  double integral() const;
  double abs_integral() const;
  /// Least value attained over the pieces (0 if there are none).
  double min_value() const;
  /// Throws ConfigError on overlapping/reversed pieces or empty coefficient
  /// lists; `lo`/`hi` bound the allowed support.
  void validate(double lo, double hi) const;
  /// All piece endpoints, ascending.
  std::vector<double> breakpoints() const;
};

}  // namespace nlivp
