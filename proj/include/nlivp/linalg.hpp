#pragma once

#include <vector>

namespace nlivp {

/// Solve the dense n x n system J x = rhs in place (row-major J) by LU with
/// partial pivoting; rhs is overwritten with the solution. Returns false and
/// leaves the inputs unspecified when a pivot is numerically zero.
bool lu_solve_inplace(std::vector<double>& J, std::vector<double>& rhs, int n);

}  // namespace nlivp
