#include "nlivp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlivp/errors.hpp"

namespace nlivp {

bool lu_solve_inplace(std::vector<double>& J, std::vector<double>& rhs,
                      int n) {
  if (n < 1 || J.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n) ||
      rhs.size() != static_cast<std::size_t>(n))
    throw InternalError("lu_solve_inplace: bad dimensions");
  auto at = [&](int r, int c) -> double& {
    return J[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(c)];
  };
  double scale = 0.0;
  for (double v : J) scale = std::max(scale, std::abs(v));
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, scale) * static_cast<double>(n);

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
    if (std::abs(at(pivot, k)) <= tiny) return false;
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(at(pivot, c), at(k, c));
      std::swap(rhs[static_cast<std::size_t>(pivot)],
                rhs[static_cast<std::size_t>(k)]);
    }
    for (int r = k + 1; r < n; ++r) {
      double m = at(r, k) / at(k, k);
      at(r, k) = 0.0;
      for (int c = k + 1; c < n; ++c) at(r, c) -= m * at(k, c);
      rhs[static_cast<std::size_t>(r)] -= m * rhs[static_cast<std::size_t>(k)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c)
      acc -= at(r, c) * rhs[static_cast<std::size_t>(c)];
    rhs[static_cast<std::size_t>(r)] = acc / at(r, r);
  }
  return true;
}

}  // namespace nlivp
