#ifndef CONDKIN_IO_HPP
#define CONDKIN_IO_HPP

#include <string>

#include "condkin/grid.hpp"
#include "condkin/kinetics.hpp"

namespace condkin {

// Shortest text representation that round-trips a double (17 significant
// digits); used for every float written to an artifact file.
std::string format_double(double v);

// Flat density dump: header q_1[,q_2[,q_3]],n then one row per node.
void write_density_csv(const DensityField& field, const std::string& path);

// Time-series log: header t,total_number,max_residual,min_value.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace condkin

#endif
