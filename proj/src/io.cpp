#include "condkin/io.hpp"

#include <cstdio>
#include <fstream>

#include "condkin/errors.hpp"

namespace condkin {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidConfiguration("cli", "cannot open output file: " + path);
  return out;
}

}  // namespace

void write_density_csv(const DensityField& field, const std::string& path) {
  auto out = open_out(path);
  const int d = field.grid.dim();
  for (int a = 0; a < d; ++a) out << "q_" << a + 1 << ",";
  out << "n\n";
  for (std::size_t i = 0; i < field.size(); ++i) {
    const auto multi = field.grid.unflatten(i);
    for (int a = 0; a < d; ++a) out << format_double(field.grid.axis_coordinate(multi[a])) << ",";
    out << format_double(field[i]) << "\n";
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  auto out = open_out(path);
  out << "t,total_number,max_residual,min_value\n";
  for (const auto& snap : traj.snapshots) {
    out << format_double(snap.time) << "," << format_double(snap.total_number) << ","
        << format_double(snap.max_residual) << "," << format_double(snap.min_value) << "\n";
  }
}

}  // namespace condkin
