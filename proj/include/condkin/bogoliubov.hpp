#ifndef CONDKIN_BOGOLIUBOV_HPP
#define CONDKIN_BOGOLIUBOV_HPP

#include "condkin/dispersion.hpp"

namespace condkin {

// Hyperbolic rotation coefficients u = cosh x, v = sinh x of the canonical
// transformation a(p) = u b(p) + v b*(-p); u^2 - v^2 = 1 by construction.
struct BogoliubovCoeffs {
  double x = 0.0;
  double u = 1.0;
  double v = 0.0;
};

// Coefficients of the quadratic mean-field Hamiltonian at one momentum:
// omega = kinetic energy, t = gamma * g(p) (pair coupling strength).
struct QuadraticHamiltonianPoint {
  double omega = 0.0;
  double t = 0.0;
};

// Solves tanh(2x) = t / (omega + t), the condition that kills the
// anomalous (pair creation/annihilation) terms. The p = 0 mode is excluded;
// omega <= 0 with coupling present raises SingularMode.
double compensation_x(const QuadraticHamiltonianPoint& point);

BogoliubovCoeffs coeffs(double x);

// Coefficient of the anomalous terms after the rotation:
// -u v (omega + t) + (u^2 + v^2) t / 2. Zero at the compensated x.
double offdiagonal_residual(const QuadraticHamiltonianPoint& point, const BogoliubovCoeffs& c);

// Coefficient of the number operator after the rotation:
// (u^2 + v^2)(omega + t) - 2 u v t. At the compensated x this equals the
// excitation energy sqrt(omega^2 + 2 omega t), and it is minimal there.
double diagonal_coefficient(const QuadraticHamiltonianPoint& point, const BogoliubovCoeffs& c);

// mu = gamma * g(0), from stationarity of the ground-state energy in N0.
double chemical_potential(const PhysicalParams& params);

struct GroundStateEnergy {
  double e1 = 0.0;                    // (gamma N0 / 2) g(0) - mu N0
  double hamiltonian_constant = 0.0;  // -(gamma N0 / 2) g(0), the diagonalized-form constant
};

GroundStateEnergy ground_state_energy(const PhysicalParams& params, double n0);

}  // namespace condkin

#endif
