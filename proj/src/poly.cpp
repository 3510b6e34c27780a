#include "nlivp/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

namespace {

// Degree after stripping trailing (highest-power) zero coefficients.
std::span<const double> trimmed(std::span<const double> c) {
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0.0) --n;
  return c.subspan(0, n);
}

double bisect_root(std::span<const double> c, double lo, double hi) {
  double flo = poly_value(c, lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = poly_value(c, mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double poly_value(std::span<const double> coeffs, double s) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
  return acc;
}

std::vector<double> poly_antiderivative(std::span<const double> coeffs) {
  std::vector<double> out(coeffs.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  return out;
}

double poly_integral(std::span<const double> coeffs, double a, double b) {
  std::vector<double> anti = poly_antiderivative(coeffs);
  return poly_value(anti, b) - poly_value(anti, a);
}

std::vector<double> poly_real_roots_in(std::span<const double> coeffs,
                                       double a, double b) {
  std::span<const double> c = trimmed(coeffs);
  std::vector<double> roots;
  if (c.size() <= 1 || a >= b) return roots;  // constants have no isolated roots

  if (c.size() == 2) {
    double r = -c[0] / c[1];
    if (r > a && r < b) roots.push_back(r);
    return roots;
  }

  // Critical points split (a, b) into monotone intervals.
  std::vector<double> deriv(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    deriv[i - 1] = c[i] * static_cast<double>(i);
  std::vector<double> cuts = poly_real_roots_in(deriv, a, b);
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double u = cuts[i], v = cuts[i + 1];
    double fu = poly_value(c, u), fv = poly_value(c, v);
    if (fu == 0.0 && u > a) {
      roots.push_back(u);
      continue;
    }
    if ((fu < 0.0 && fv > 0.0) || (fu > 0.0 && fv < 0.0))
      roots.push_back(bisect_root(c, u, v));
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double x, double y) {
                            return std::abs(x - y) <=
                                   1e-14 * std::max(1.0, std::abs(b));
                          }),
              roots.end());
  return roots;
}

double poly_abs_integral(std::span<const double> coeffs, double a, double b) {
  std::vector<double> cuts = poly_real_roots_in(coeffs, a, b);
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += std::abs(poly_integral(coeffs, cuts[i], cuts[i + 1]));
  return total;
}

double poly_min_on(std::span<const double> coeffs, double a, double b) {
  double best = std::min(poly_value(coeffs, a), poly_value(coeffs, b));
  std::span<const double> c = trimmed(coeffs);
  if (c.size() >= 3) {
    std::vector<double> deriv(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
      deriv[i - 1] = c[i] * static_cast<double>(i);
    for (double r : poly_real_roots_in(deriv, a, b))
      best = std::min(best, poly_value(c, r));
  }
  return best;
}

bool PiecewisePoly::empty() const { return pieces.empty(); }

double PiecewisePoly::value(double s) const {
  for (const PolyPiece& p : pieces)
    if (s >= p.from && s <= p.to) return p.value(s);
  return 0.0;
}

double PiecewisePoly::integral() const {
  double acc = 0.0;
  for (const PolyPiece& p : pieces) acc += p.integral();
  return acc;
}

double PiecewisePoly::abs_integral() const {
  double acc = 0.0;
  for (const PolyPiece& p : pieces) acc += p.abs_integral();
  return acc;
}

double PiecewisePoly::min_value() const {
  double best = 0.0;
  bool first = true;
  for (const PolyPiece& p : pieces) {
    double m = poly_min_on(p.coeffs, p.from, p.to);
    best = first ? m : std::min(best, m);
    first = false;
  }
  return first ? 0.0 : best;
}

void PiecewisePoly::validate(double lo, double hi) const {
  double prev_end = lo;
  bool first = true;
  for (const PolyPiece& p : pieces) {
    if (p.coeffs.empty())
      throw ConfigError("density piece has no coefficients");
    if (!(p.from < p.to))
      throw ConfigError("density piece must satisfy from < to (got [" +
                        std::to_string(p.from) + ", " + std::to_string(p.to) +
                        "])");
    if (p.from < lo || p.to > hi)
      throw ConfigError("density piece [" + std::to_string(p.from) + ", " +
                        std::to_string(p.to) + "] lies outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if (!first && p.from < prev_end)
      throw ConfigError("density pieces overlap or are out of order");
    prev_end = p.to;
    first = false;
  }
}

std::vector<double> PiecewisePoly::breakpoints() const {
  std::vector<double> out;
  for (const PolyPiece& p : pieces) {
    out.push_back(p.from);
    out.push_back(p.to);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace nlivp
