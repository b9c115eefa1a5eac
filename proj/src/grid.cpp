#include "condkin/grid.hpp"

#include <cmath>
#include <string>

#include "condkin/errors.hpp"

namespace condkin {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005;
}

MomentumGrid make_grid(int dim, double q_max, int points_per_axis) {
  if (dim < 1 || dim > 3)
    throw InvalidConfiguration("grid", "dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (!(q_max > 0.0))
    throw InvalidConfiguration("grid", "q_max must be positive, got " + std::to_string(q_max));
  if (points_per_axis < 2 || points_per_axis % 2 != 0)
    throw InvalidConfiguration("grid", "points per axis must be even and >= 2, got " +
                                           std::to_string(points_per_axis));

  MomentumGrid g;
  g.dim_ = dim;
  g.n_ = points_per_axis;
  g.q_max_ = q_max;
  g.dq_ = 2.0 * q_max / points_per_axis;
  g.cell_volume_ = std::pow(g.dq_, dim);
  g.node_count_ = 1;
  for (int a = 0; a < dim; ++a) g.node_count_ *= static_cast<std::size_t>(points_per_axis);
  g.axis_.resize(static_cast<std::size_t>(points_per_axis));
  for (int i = 0; i < points_per_axis; ++i)
    g.axis_[static_cast<std::size_t>(i)] = -q_max + (i + 0.5) * g.dq_;
  return g;
}

std::array<int, 3> MomentumGrid::unflatten(std::size_t node) const {
  std::array<int, 3> multi{0, 0, 0};
  auto n = static_cast<std::size_t>(n_);
  for (int a = 0; a < dim_; ++a) {
    multi[static_cast<std::size_t>(a)] = static_cast<int>(node % n);
    node /= n;
  }
  return multi;
}

std::size_t MomentumGrid::flatten(const std::array<int, 3>& multi) const {
  std::size_t index = 0;
  auto n = static_cast<std::size_t>(n_);
  for (int a = dim_ - 1; a >= 0; --a)
    index = index * n + static_cast<std::size_t>(multi[static_cast<std::size_t>(a)]);
  return index;
}

bool MomentumGrid::in_range(const std::array<int, 3>& multi) const {
  for (int a = 0; a < dim_; ++a) {
    int i = multi[static_cast<std::size_t>(a)];
    if (i < 0 || i >= n_) return false;
  }
  return true;
}

Vec3 MomentumGrid::node(const std::array<int, 3>& multi) const {
  Vec3 q;
  q.x = axis_coordinate(multi[0]);
  if (dim_ > 1) q.y = axis_coordinate(multi[1]);
  if (dim_ > 2) q.z = axis_coordinate(multi[2]);
  return q;
}

Vec3 MomentumGrid::node(std::size_t index) const { return node(unflatten(index)); }

void validate_density(const DensityField& field) {
  if (field.values.size() != field.grid.node_count())
    throw InvalidConfiguration("grid", "density value count does not match the grid");
  for (double v : field.values) {
    if (!std::isfinite(v)) throw NumericalFailure("grid", "density contains NaN/inf");
    if (v < 0.0) throw NumericalFailure("grid", "density has a negative value");
  }
}

double integrate(const DensityField& field) {
  double sum = 0.0;
  for (double v : field.values) sum += v;
  return sum * field.grid.cell_volume();
}

double max_abs(const DensityField& field) {
  double m = 0.0;
  for (double v : field.values) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const DensityField& field) {
  if (field.values.empty()) return 0.0;
  double m = field.values.front();
  for (double v : field.values) m = std::min(m, v);
  return m;
}

double mollified_delta(double x, double sigma) {
  if (!(sigma > 0.0))
    throw InvalidConfiguration("grid", "mollifier width must be positive, got " +
                                           std::to_string(sigma));
  double u = x / sigma;
  return std::exp(-0.5 * u * u) / (sigma * kSqrt2Pi);
}

OffsetTable::OffsetTable(const MomentumGrid& grid) {
  int span = grid.points_per_axis() - 1;
  int lo[3] = {-span, 0, 0};
  int hi[3] = {span, 0, 0};
  for (int a = 1; a < grid.dim(); ++a) {
    lo[a] = -span;
    hi[a] = span;
  }
  for (int mz = lo[2]; mz <= hi[2]; ++mz)
    for (int my = lo[1]; my <= hi[1]; ++my)
      for (int mx = lo[0]; mx <= hi[0]; ++mx) {
        if (mx == 0 && my == 0 && mz == 0) continue;  // zero transfer cancels identically
        offsets_.push_back({mx, my, mz});
        momenta_.push_back(Vec3(mx * grid.dq(), my * grid.dq(), mz * grid.dq()));
      }
}

}  // namespace condkin
