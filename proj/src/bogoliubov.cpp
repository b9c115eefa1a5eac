#include "condkin/bogoliubov.hpp"

#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

double compensation_x(const QuadraticHamiltonianPoint& point) {
  if (point.t < 0.0)
    throw InvalidConfiguration("bogoliubov", "pair coupling t must be nonnegative");
  if (point.t == 0.0) return 0.0;
  if (!(point.omega > 0.0))
    throw SingularMode("bogoliubov",
                       "omega must be positive with coupling present (p = 0 mode is excluded)");
  return std::atanh(point.t / (point.omega + point.t)) / 2.0;
}

BogoliubovCoeffs coeffs(double x) {
  if (!std::isfinite(x)) throw InvalidConfiguration("bogoliubov", "hyperbolic parameter not finite");
  return {x, std::cosh(x), std::sinh(x)};
}

double offdiagonal_residual(const QuadraticHamiltonianPoint& point, const BogoliubovCoeffs& c) {
  return -c.u * c.v * (point.omega + point.t) + (c.u * c.u + c.v * c.v) * point.t / 2.0;
}

double diagonal_coefficient(const QuadraticHamiltonianPoint& point, const BogoliubovCoeffs& c) {
  return (c.u * c.u + c.v * c.v) * (point.omega + point.t) - 2.0 * c.u * c.v * point.t;
}

double chemical_potential(const PhysicalParams& params) {
  if (params.gamma < 0.0)
    throw InvalidConfiguration("bogoliubov", "coupling gamma must be nonnegative");
  return params.gamma * params.g.at_zero();
}

GroundStateEnergy ground_state_energy(const PhysicalParams& params, double n0) {
  if (!(n0 > 0.0)) throw InvalidConfiguration("bogoliubov", "condensate number N0 must be positive");
  const double g0 = params.g.at_zero();
  const double mu = chemical_potential(params);
  GroundStateEnergy out;
  // lambda N0^2 / 2V = gamma N0 / 2, since gamma = lambda N0 / V
  out.e1 = params.gamma * n0 / 2.0 * g0 - mu * n0;
  out.hamiltonian_constant = -params.gamma * n0 / 2.0 * g0;
  return out;
}

}  // namespace condkin
