#ifndef CONDKIN_CONDENSATION_HPP
#define CONDKIN_CONDENSATION_HPP

namespace condkin {

// Where the gas sits relative to the condensation transition at one
// temperature: c is the weight of the delta(p) part of the distribution.
struct CondensateState {
  double theta = 0.0;
  double theta_c = 0.0;
  double condensate_weight = 0.0;  // c, 0 <= c <= rho; 0 at and above theta_c
  double rho = 0.0;
};

// Equilibrium occupation 1 / (e^{beta (omega - mu)} - 1), mu <= 0.
// Throws DivergentOccupation at or below the pole omega = mu.
double bose_occupation(double omega, double beta, double mu);

// Density of the thermal component in d = 3 at mu = 0:
// integral of 4 pi p^2 / (e^{beta p^2 / 2m} - 1) by adaptive quadrature.
// Equals (2 pi m / beta)^{3/2} zeta(3/2).
double normal_density(double beta, double mass);

// Temperature where the thermal density exhausts rho and the condensate
// disappears; bisection on the quadrature density to 1e-10 relative.
double critical_temperature(double rho, double mass);

// c(theta) = rho (1 - (theta/theta_c)^{3/2}) below theta_c, else 0.
CondensateState condensate_fraction(double theta, double rho, double mass);

}  // namespace condkin

#endif
