#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"

namespace condkin {

namespace {

constexpr double kClipFraction = 1e-8;  // allowed clipped mass per step, relative to total

bool all_finite(const DensityField& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

// clips negatives in place; returns the removed mass
double clip_negatives(DensityField& f) {
  double removed = 0.0;
  for (double& v : f.values) {
    if (v < 0.0) {
      removed -= v;
      v = 0.0;
    }
  }
  return removed * f.grid.cell_volume();
}

}  // namespace

void validate_evolution_config(const EvolutionConfig& config) {
  if (!(config.dt > 0.0)) throw InvalidConfiguration("kinetics", "time step dt must be positive");
  if (config.t_end < 0.0)
    throw InvalidConfiguration("kinetics", "time horizon t_end must be nonnegative");
  if (!(config.sigma_e > 0.0))
    throw InvalidConfiguration("kinetics", "mollifier width sigma_e must be positive");
  if (config.record_every < 1)
    throw InvalidConfiguration("kinetics", "record_every must be at least 1");
}

DensityField rk4_step(const std::function<DensityField(const DensityField&)>& rhs,
                      const DensityField& n, double dt) {
  const std::size_t count = n.size();
  DensityField stage(n.grid);

  DensityField k1 = rhs(n);
  for (std::size_t i = 0; i < count; ++i) stage[i] = n[i] + 0.5 * dt * k1[i];
  DensityField k2 = rhs(stage);
  for (std::size_t i = 0; i < count; ++i) stage[i] = n[i] + 0.5 * dt * k2[i];
  DensityField k3 = rhs(stage);
  for (std::size_t i = 0; i < count; ++i) stage[i] = n[i] + dt * k3[i];
  DensityField k4 = rhs(stage);

  DensityField next(n.grid);
  for (std::size_t i = 0; i < count; ++i)
    next[i] = n[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return next;
}

Trajectory evolve(const DensityField& n0, const DispersionModel& dispersion,
                  const PhysicalParams& params, const EvolutionConfig& config,
                  const ReservoirSpec* reservoir) {
  validate_evolution_config(config);
  validate_density(n0);
  if (config.form == RhsForm::linear && reservoir == nullptr)
    throw InvalidConfiguration("kinetics", "linear evolution needs a reservoir");

  CollisionKernel kernel(n0.grid, config.form == RhsForm::linear ? reservoir->dispersion
                                                                 : dispersion,
                         params, config.sigma_e);

  std::function<DensityField(const DensityField&)> rhs;
  switch (config.form) {
    case RhsForm::linear: {
      const DensityField& occupation = reservoir->occupation;
      const double beta = reservoir->beta;
      rhs = [&kernel, &occupation, beta](const DensityField& n) {
        return linear_rhs(n, occupation, beta, kernel);
      };
      break;
    }
    case RhsForm::nonlinear:
      rhs = [&kernel](const DensityField& n) { return nonlinear_rhs(n, kernel); };
      break;
    case RhsForm::nonlinear_with_bose_factors: {
      const double beta = reservoir ? reservoir->beta : params.beta;
      rhs = [&kernel, beta](const DensityField& n) {
        return identified_linear_rhs(n, beta, kernel);
      };
      break;
    }
  }

  Trajectory traj;
  auto record = [&](double t, const DensityField& n, double min_before_clip, double clipped) {
    Snapshot snap;
    snap.time = t;
    snap.density = n;
    snap.total_number = integrate(n);
    snap.max_residual = max_abs(rhs(n));
    snap.min_value = min_before_clip;
    snap.clipped_mass = clipped;
    traj.snapshots.push_back(std::move(snap));
  };

  DensityField n = n0;
  record(0.0, n, min_value(n), 0.0);

  const double t_end = config.t_end;
  double t = 0.0;
  long step_index = 0;
  while (t < t_end * (1.0 - 1e-12) && t_end > 0.0) {
    const double dt = std::min(config.dt, t_end - t);
    DensityField next = rk4_step(rhs, n, dt);
    t += dt;
    ++step_index;

    if (!all_finite(next)) {
      traj.status = EvolutionStatus::diverged;
      traj.message = "state became NaN/inf at t = " + std::to_string(t);
      return traj;
    }
    const double min_before = min_value(next);
    const double clipped = clip_negatives(next);
    const double total = integrate(next);
    if (total > 0.0 && clipped > kClipFraction * total) {
      traj.status = EvolutionStatus::step_size_exceeded;
      traj.message = "clipped mass " + std::to_string(clipped) + " exceeds " +
                     std::to_string(kClipFraction) + " of the total at t = " + std::to_string(t) +
                     "; reduce dt";
      return traj;
    }
    n = std::move(next);

    const bool last = !(t < t_end * (1.0 - 1e-12));
    if (step_index % config.record_every == 0 || last) record(t, n, min_before, clipped);
  }
  return traj;
}

}  // namespace condkin
