#ifndef CONDKIN_KINETICS_HPP
#define CONDKIN_KINETICS_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "condkin/dispersion.hpp"
#include "condkin/grid.hpp"

namespace condkin {

// Reservoir seen by the linear master equation: inverse temperature of the
// excitation bath, a fixed background occupation N(p), and the excitation
// law E(k) entering the energy deltas and Bose factors. Passing a free
// dispersion here reproduces the bare omega(k) reading of the rates; the
// default elsewhere is the post-transformation excitation law.
struct ReservoirSpec {
  double beta = 1.0;
  DensityField occupation;
  DispersionModel dispersion;
};

// Transition weights between grid nodes. The momentum transfer k runs over
// the displacement lattice of the grid (integer multiples of dq), so q - k
// and q + k land exactly on nodes; transfers leaving the box are dropped
// (absorbing cutoff). The weight of the pair (node i, offset m) is
//
//   w(i, m) = 2 pi |f(k_m, q_i)|^2 delta_sigma(E(k_m) + eps(q_{i-m}) - eps(q_i))
//
// and the second (emission-relabeled) branch of the master equation reuses
// the same table at the shifted node, which makes the gain/loss pairing --
// and hence number conservation -- exact on the grid.
class CollisionKernel {
 public:
  enum class Storage { automatic, precomputed, on_the_fly };

  CollisionKernel(const MomentumGrid& grid, const DispersionModel& dispersion,
                  const PhysicalParams& params, double sigma_e,
                  Storage storage = Storage::automatic);

  const MomentumGrid& grid() const { return grid_; }
  const OffsetTable& offsets() const { return offsets_; }
  const DispersionModel& dispersion() const { return dispersion_; }
  const PhysicalParams& params() const { return params_; }
  double sigma_e() const { return sigma_e_; }
  bool precomputed() const { return !table_.empty(); }

  // valid only when node - offset is inside the grid (zero otherwise)
  double weight(std::size_t node, std::size_t offset_index) const {
    if (!table_.empty()) return table_[node * offsets_.size() + offset_index];
    return compute_weight(node, offset_index);
  }

  double offset_energy(std::size_t offset_index) const { return offset_energy_[offset_index]; }
  std::ptrdiff_t flat_shift(std::size_t offset_index) const { return flat_shift_[offset_index]; }
  double node_epsilon(std::size_t node) const { return node_eps_[node]; }

  // Bose factors per offset: absorption n+(k) = 1/(e^{beta E} - 1) and
  // emission 1 + n+(k); beta = +inf gives the zero-temperature limit (0, 1).
  std::vector<double> absorption_weights(double beta) const;
  std::vector<double> emission_weights(double beta) const;

 private:
  double compute_weight(std::size_t node, std::size_t offset_index) const;

  MomentumGrid grid_;
  OffsetTable offsets_;
  DispersionModel dispersion_;
  PhysicalParams params_;
  double sigma_e_;
  std::vector<double> node_eps_;
  std::vector<Vec3> node_q_;
  std::vector<double> offset_energy_;
  std::vector<std::ptrdiff_t> flat_shift_;
  std::vector<double> table_;
};

// Default mollifier width: 4x the typical variation of the delta argument
// across one grid cell.
double default_mollifier_width(const MomentumGrid& grid, const DispersionModel& dispersion,
                               double mass);

// --- right-hand sides --------------------------------------------------------

// Linear master equation for the condensate density against a fixed
// reservoir occupation N(p). For each node q the rate collects, over all
// lattice transfers k, the gain/loss bracket of the transition q-k <-> q and
// the emission-relabeled bracket of q <-> q+k.
DensityField linear_rhs(const DensityField& n, const ReservoirSpec& reservoir,
                        const PhysicalParams& params, double sigma_e);
DensityField linear_rhs(const DensityField& n, const DensityField& occupation, double beta,
                        const CollisionKernel& kernel);

// Quadratic kinetic equation: the reservoir occupation is the evolving
// density itself and N+1 is identified with N, after which the Bose factors
// cancel and only n(q) n(q-+k) products remain.
DensityField nonlinear_rhs(const DensityField& n, const DispersionModel& dispersion,
                           const PhysicalParams& params, double sigma_e);
DensityField nonlinear_rhs(const DensityField& n, const CollisionKernel& kernel);

// Linear-kernel arithmetic with the substitution N := n, N+1 -> N applied;
// algebraically identical to nonlinear_rhs, kept as an independent
// evaluation route (it carries the Bose factors through the arithmetic).
DensityField identified_linear_rhs(const DensityField& n, double beta,
                                   const CollisionKernel& kernel);

// The identification that turns the linear equation into the quadratic one.
// The reservoir occupation stops mattering (it is replaced by the state),
// so the result depends on the reservoir only through beta and dispersion.
std::function<DensityField(const DensityField&)> apply_identification(
    const ReservoirSpec& reservoir, const PhysicalParams& params, double sigma_e);

// --- time evolution ----------------------------------------------------------

enum class RhsForm {
  linear,
  nonlinear,
  nonlinear_with_bose_factors,  // identified-linear route; same equation, kept for comparison
};

struct EvolutionConfig {
  double dt = 1e-2;
  double t_end = 1.0;
  double sigma_e = 1e-2;
  RhsForm form = RhsForm::nonlinear;
  int record_every = 1;
};

void validate_evolution_config(const EvolutionConfig& config);

struct Snapshot {
  double time = 0.0;
  DensityField density;
  double total_number = 0.0;
  double max_residual = 0.0;  // ||rhs||_inf at snapshot time
  double min_value = 0.0;     // field minimum before clipping
  double clipped_mass = 0.0;  // mass removed by clipping at this step
};

enum class EvolutionStatus { ok, diverged, step_size_exceeded };

struct Trajectory {
  std::vector<Snapshot> snapshots;
  EvolutionStatus status = EvolutionStatus::ok;
  std::string message;

  bool ok() const { return status == EvolutionStatus::ok; }
};

// One classical explicit 4th-order step.
DensityField rk4_step(const std::function<DensityField(const DensityField&)>& rhs,
                      const DensityField& n, double dt);

// Integrates the chosen equation; negatives are clipped to zero after each
// step with the clipped mass logged. Clipping beyond 1e-8 of the total per
// step stops with step_size_exceeded; NaN/inf stops with diverged, keeping
// the last good snapshot.
Trajectory evolve(const DensityField& n0, const DispersionModel& dispersion,
                  const PhysicalParams& params, const EvolutionConfig& config,
                  const ReservoirSpec* reservoir = nullptr);

// --- superfluidity check -----------------------------------------------------

struct SuperfluidityReport {
  bool applicable = false;   // model has a finite sound speed
  double sound_speed = 0.0;
  double support_radius_limit = 0.0;  // m * c
  double support_max_radius = 0.0;    // largest |q| among cells with n > tol * max(n)
  bool support_ok = false;

  // peak on-shell products, normalized by max(n) * delta_sigma(0)
  double prod1_residual = 0.0;  // n(q)   delta_sigma(E(k) + eps(q-k) - eps(q))
  double prod2_residual = 0.0;  // n(q-k) delta_sigma(E(k) + eps(q-k) - eps(q))

  double nonlinear_residual = 0.0;  // ||quadratic rhs||_inf / ||n||_inf
  double linear_residual = 0.0;     // ||linear rhs, N = 0||_inf / ||n||_inf

  double support_gap = 0.0;      // min |delta argument| over occupied pairs
  double mollifier_bound = 0.0;  // 4 pi |f|^2_max delta_sigma(gap) * total number
  double tol = 0.0;

  bool superfluid = false;  // support condition holds
};

// Evaluates the stationarity evidence for a candidate superfluid state.
// Not applicable (flag false) when the model has no sound speed.
SuperfluidityReport superfluidity_check(const DensityField& n, const DispersionModel& model,
                                        const PhysicalParams& params, double sigma_e,
                                        double tol = 1e-2);

// --- susceptibilities --------------------------------------------------------

// Complex drift coefficients of the stochastic equation, resolved per
// observable node p. The -i0 denominator is regularized as
// x/(x^2 + eps^2) + i pi delta_sigma(x), so the imaginary parts are pi times
// the corresponding delta-rate integrals and twice their sum is the loss
// rate of n(p) in the linear equation.
struct Susceptibility {
  std::vector<std::complex<double>> minus;
  std::vector<std::complex<double>> plus;
};

Susceptibility susceptibility(const MomentumGrid& grid, const ReservoirSpec& reservoir,
                              const PhysicalParams& params, double sigma_e, double epsilon_reg);

}  // namespace condkin

#endif
