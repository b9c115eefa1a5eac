#ifndef CONDKIN_GRID_HPP
#define CONDKIN_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "condkin/vec3.hpp"

namespace condkin {

// Uniform cell-centered Cartesian discretization of momentum space.
//
// Nodes sit at the centers of N^d cells covering [-q_max, q_max]^d, so the
// node set is symmetric under q -> -q (N even, no node at the origin) and
// node differences are exact integer multiples of dq. The collision kernels
// rely on that: a momentum transfer taken from the displacement lattice maps
// nodes to nodes, which is what makes the gain/loss pairing (and hence
// number conservation) exact on the grid.
class MomentumGrid {
 public:
  MomentumGrid() = default;

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double q_max() const { return q_max_; }
  double dq() const { return dq_; }
  double cell_volume() const { return cell_volume_; }
  std::size_t node_count() const { return node_count_; }

  // Cell-center coordinate along one axis, index in [0, N).
  double axis_coordinate(int index) const { return axis_[static_cast<std::size_t>(index)]; }

  std::array<int, 3> unflatten(std::size_t node) const;
  std::size_t flatten(const std::array<int, 3>& multi) const;
  bool in_range(const std::array<int, 3>& multi) const;

  Vec3 node(std::size_t index) const;
  Vec3 node(const std::array<int, 3>& multi) const;

  bool same_as(const MomentumGrid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && q_max_ == other.q_max_;
  }

  friend MomentumGrid make_grid(int dim, double q_max, int points_per_axis);

 private:
  int dim_ = 0;
  int n_ = 0;
  double q_max_ = 0.0;
  double dq_ = 0.0;
  double cell_volume_ = 0.0;
  std::size_t node_count_ = 0;
  std::vector<double> axis_;
};

// Builds the grid; N must be even and >= 2, q_max > 0, dim in {1,2,3}.
MomentumGrid make_grid(int dim, double q_max, int points_per_axis);

// Nonnegative classical density over the grid nodes.
struct DensityField {
  MomentumGrid grid;
  std::vector<double> values;

  DensityField() = default;
  explicit DensityField(const MomentumGrid& g, double fill = 0.0)
      : grid(g), values(g.node_count(), fill) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

// Checks the density invariants (finite, nonnegative); throws on violation.
void validate_density(const DensityField& field);

// Riemann midpoint sum of the field over the box.
double integrate(const DensityField& field);

double max_abs(const DensityField& field);
double min_value(const DensityField& field);

// Gaussian approximation of the energy-conservation delta,
// delta_sigma(x) = exp(-x^2 / 2 sigma^2) / (sigma sqrt(2 pi)).
double mollified_delta(double x, double sigma);

// Displacement lattice of a grid: every nonzero integer offset vector m with
// |m_axis| <= N-1, giving momentum transfers k = m * dq that connect nodes to
// nodes. Shared by the collision kernels and the susceptibility sums.
class OffsetTable {
 public:
  explicit OffsetTable(const MomentumGrid& grid);

  std::size_t size() const { return offsets_.size(); }
  const std::array<int, 3>& offset(std::size_t i) const { return offsets_[i]; }
  Vec3 momentum(std::size_t i) const { return momenta_[i]; }

 private:
  std::vector<std::array<int, 3>> offsets_;
  std::vector<Vec3> momenta_;
};

}  // namespace condkin

#endif
