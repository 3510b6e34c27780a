#pragma once

#include <ostream>
#include <string>

#include "nlivp/trajectory.hpp"
#include "nlivp/truncation.hpp"

namespace nlivp {

/// Shortest decimal that round-trips an IEEE double (17 significant digits).
std::string format17(double v);

/// Header "t,x_1,...,x_N", one row per grid node, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& x);

/// Header "N,d,iterations,status"; d is empty for the last row and for rows
/// without a converged neighbour.
void write_study_csv(std::ostream& out, const StudyTable& table);

}  // namespace nlivp
