#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/kinetics.hpp"
#include "condkin/parallel.hpp"

namespace condkin {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Above this many table entries (~48 MB) the kernel is evaluated on the fly.
constexpr std::size_t kPrecomputeLimit = 6'000'000;

}  // namespace

CollisionKernel::CollisionKernel(const MomentumGrid& grid, const DispersionModel& dispersion,
                                 const PhysicalParams& params, double sigma_e, Storage storage)
    : grid_(grid), offsets_(grid), dispersion_(dispersion), params_(params), sigma_e_(sigma_e) {
  if (!(sigma_e > 0.0))
    throw InvalidConfiguration("kinetics", "mollifier width sigma_e must be positive");
  validate_params(params);

  const std::size_t nodes = grid_.node_count();
  node_eps_.resize(nodes);
  node_q_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    node_q_[i] = grid_.node(i);
    node_eps_[i] = epsilon(node_q_[i], params_.mass);
  }

  const std::size_t n_off = offsets_.size();
  offset_energy_.resize(n_off);
  flat_shift_.resize(n_off);
  const auto n = static_cast<std::ptrdiff_t>(grid_.points_per_axis());
  for (std::size_t o = 0; o < n_off; ++o) {
    offset_energy_[o] = dispersion_(offsets_.momentum(o));
    const auto& m = offsets_.offset(o);
    flat_shift_[o] = m[0] + n * (m[1] + n * m[2]);
  }

  const bool precompute = storage == Storage::precomputed ||
                          (storage == Storage::automatic && nodes * n_off <= kPrecomputeLimit);
  if (precompute) {
    table_.assign(nodes * n_off, 0.0);
    detail::parallel_for(nodes, [this, n_off](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t o = 0; o < n_off; ++o)
          table_[i * n_off + o] = compute_weight(i, o);
    });
  }
}

double CollisionKernel::compute_weight(std::size_t node, std::size_t offset_index) const {
  const auto& m = offsets_.offset(offset_index);
  auto multi = grid_.unflatten(node);
  const std::array<int, 3> from{multi[0] - m[0], multi[1] - m[1], multi[2] - m[2]};
  if (!grid_.in_range(from)) return 0.0;
  const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) -
                                                 flat_shift_[offset_index]);
  const double arg = offset_energy_[offset_index] + node_eps_[j] - node_eps_[node];
  const double f2 = params_.f.squared_modulus(offsets_.momentum(offset_index), node_q_[node]);
  return kTwoPi * f2 * mollified_delta(arg, sigma_e_);
}

std::vector<double> CollisionKernel::absorption_weights(double beta) const {
  std::vector<double> out(offsets_.size());
  for (std::size_t o = 0; o < out.size(); ++o) out[o] = 1.0 / std::expm1(beta * offset_energy_[o]);
  return out;
}

std::vector<double> CollisionKernel::emission_weights(double beta) const {
  std::vector<double> out(offsets_.size());
  for (std::size_t o = 0; o < out.size(); ++o)
    out[o] = 1.0 / (-std::expm1(-beta * offset_energy_[o]));
  return out;
}

double default_mollifier_width(const MomentumGrid& grid, const DispersionModel& dispersion,
                               double mass) {
  const double dq = grid.dq();
  // variation of E(k) + eps(q-k) - eps(q) when q or k moves by one cell
  const double excitation_step = dispersion(Vec3(dq, 0.0, 0.0));
  const double kinetic_step = grid.q_max() * dq / mass;
  return 4.0 * (excitation_step + kinetic_step);
}

}  // namespace condkin
