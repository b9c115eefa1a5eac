#include "condkin/condensation.hpp"

#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/quadrature.hpp"

namespace condkin {

double bose_occupation(double omega, double beta, double mu) {
  if (mu > 0.0)
    throw InvalidConfiguration("condensation", "chemical potential must be nonpositive");
  if (!(beta > 0.0))
    throw InvalidConfiguration("condensation", "inverse temperature must be positive");
  if (!(omega - mu > 0.0))
    throw DivergentOccupation("condensation", "occupation pole: omega - mu <= 0");
  return 1.0 / std::expm1(beta * (omega - mu));
}

namespace {

// 4 pi p^2 / (e^{beta p^2/2m} - 1); smooth through p = 0 where it tends to
// 8 pi m / beta.
double thermal_integrand(double p, double beta, double mass) {
  const double x = beta * p * p / (2.0 * mass);
  if (x == 0.0) return 8.0 * M_PI * mass / beta;
  return 4.0 * M_PI * p * p / std::expm1(x);
}

}  // namespace

double normal_density(double beta, double mass) {
  if (!(beta > 0.0))
    throw InvalidConfiguration("condensation", "inverse temperature must be positive");
  if (!(mass > 0.0)) throw InvalidConfiguration("condensation", "mass must be positive");
  if (std::isinf(beta)) return 0.0;  // frozen gas
  // exp(-x) < 1e-16 of the integrand peak well before x = beta p^2/2m = 45
  const double p_cut = std::sqrt(2.0 * mass / beta) * std::sqrt(45.0);
  const double scale = 8.0 * M_PI * mass / beta * p_cut;
  return numerics::adaptive_simpson(
      [beta, mass](double p) { return thermal_integrand(p, beta, mass); }, 0.0, p_cut,
      1e-12 * scale);
}

double critical_temperature(double rho, double mass) {
  if (!(rho > 0.0)) throw InvalidConfiguration("condensation", "density must be positive");
  if (!(mass > 0.0)) throw InvalidConfiguration("condensation", "mass must be positive");
  // bracket: thermal density grows like theta^{3/2}
  double lo = 1.0, hi = 1.0;
  while (normal_density(1.0 / lo, mass) > rho) lo /= 2.0;
  while (normal_density(1.0 / hi, mass) < rho) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (normal_density(1.0 / mid, mass) < rho ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CondensateState condensate_fraction(double theta, double rho, double mass) {
  if (theta < 0.0) throw InvalidConfiguration("condensation", "temperature must be nonnegative");
  CondensateState s;
  s.theta = theta;
  s.rho = rho;
  s.theta_c = critical_temperature(rho, mass);
  s.condensate_weight =
      theta >= s.theta_c ? 0.0 : rho * (1.0 - std::pow(theta / s.theta_c, 1.5));
  return s;
}

}  // namespace condkin
