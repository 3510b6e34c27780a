#include "nlivp/io.hpp"

#include <cstdio>

namespace nlivp {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& x) {
  out << "t";
  for (int n = 1; n <= x.components(); ++n) out << ",x_" << n;
  out << "\n";
  for (std::size_t i = 0; i < x.node_count(); ++i) {
    out << format17(x.grid().node(i));
    std::span<const double> row = x.row(i);
    for (double v : row) out << "," << format17(v);
    out << "\n";
  }
}

void write_study_csv(std::ostream& out, const StudyTable& table) {
  out << "N,d,iterations,status\n";
  for (const StudyRow& row : table.rows) {
    out << row.n_components << ",";
    if (row.d) out << format17(*row.d);
    out << "," << row.iterations << "," << row.status << "\n";
  }
}

}  // namespace nlivp
