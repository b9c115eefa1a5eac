#include <cmath>
#include <limits>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"

namespace condkin {

SuperfluidityReport superfluidity_check(const DensityField& n, const DispersionModel& model,
                                        const PhysicalParams& params, double sigma_e, double tol) {
  validate_density(n);
  if (!(tol > 0.0) || tol >= 1.0)
    throw InvalidConfiguration("kinetics", "support tolerance must lie in (0, 1)");

  SuperfluidityReport report;
  report.tol = tol;
  try {
    report.sound_speed = sound_speed(model);
  } catch (const NoSoundSpeed&) {
    report.applicable = false;
    return report;
  }
  report.applicable = true;
  report.support_radius_limit = params.mass * report.sound_speed;

  const MomentumGrid& grid = n.grid;
  const double n_max = max_abs(n);

  // (a) support condition: every cell above tol * max(n) inside |q| <= m c
  report.support_max_radius = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] > tol * n_max)
      report.support_max_radius = std::max(report.support_max_radius, grid.node(i).norm());
  report.support_ok = report.support_max_radius <= report.support_radius_limit * (1.0 + 1e-12);

  if (n_max == 0.0) {
    report.support_ok = true;
    report.superfluid = true;
    report.support_gap = std::numeric_limits<double>::infinity();
    return report;
  }

  CollisionKernel kernel(grid, model, params, sigma_e);
  const OffsetTable& offsets = kernel.offsets();
  const double delta_peak = mollified_delta(0.0, sigma_e);

  // (b), (c) peak on-shell products over all node/transfer pairs, and the
  // smallest delta argument among pairs where both densities are occupied
  double prod1 = 0.0, prod2 = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto multi = grid.unflatten(i);
    for (std::size_t o = 0; o < offsets.size(); ++o) {
      const auto& m = offsets.offset(o);
      const std::array<int, 3> back{multi[0] - m[0], multi[1] - m[1], multi[2] - m[2]};
      if (!grid.in_range(back)) continue;
      const std::size_t j = i - static_cast<std::size_t>(kernel.flat_shift(o));
      const double arg = kernel.offset_energy(o) + kernel.node_epsilon(j) - kernel.node_epsilon(i);
      const double d = mollified_delta(arg, sigma_e);
      prod1 = std::max(prod1, n[i] * d);
      prod2 = std::max(prod2, n[j] * d);
      if (n[i] > 0.0 && n[j] > 0.0) gap = std::min(gap, std::abs(arg));
    }
  }
  report.prod1_residual = prod1 / (n_max * delta_peak);
  report.prod2_residual = prod2 / (n_max * delta_peak);
  report.support_gap = gap;

  // (d), (e) stationarity residuals of the two equations on the same state
  report.nonlinear_residual = max_abs(nonlinear_rhs(n, kernel)) / n_max;
  DensityField zero_occupation(grid, 0.0);
  report.linear_residual = max_abs(linear_rhs(n, zero_occupation, params.beta, kernel)) / n_max;

  // every product in the quadratic rhs carries two occupied cells, so its
  // delta factor is at most delta_sigma(gap)
  const double f2max = params.f.max_squared_modulus();
  report.mollifier_bound = std::isinf(gap)
                               ? 0.0
                               : 4.0 * M_PI * f2max * mollified_delta(gap, sigma_e) * integrate(n);

  report.superfluid = report.support_ok;
  return report;
}

}  // namespace condkin
