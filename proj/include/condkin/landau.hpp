#ifndef CONDKIN_LANDAU_HPP
#define CONDKIN_LANDAU_HPP

#include <vector>

#include "condkin/dispersion.hpp"
#include "condkin/vec3.hpp"

namespace condkin {

// Result of the flow-stability scan. Flow slower than v_c cannot lower its
// energy by emitting any excitation on the scanned momenta.
struct StabilityReport {
  double v_c = 0.0;
  double argmin_k = 0.0;         // |k| where the infimum is approached (0 when at k -> 0)
  bool infimum_at_zero = false;  // infimum approached only in the k -> 0 limit

  bool is_superfluid_at(double u_abs) const { return std::abs(u_abs) < v_c; }
  bool is_superfluid_at(const Vec3& u) const { return is_superfluid_at(u.norm()); }
};

// Energy balance of emitting an excitation k out of flow with velocity u:
// E(k) - u.k + |k|^2 / 2m. Negative means the transition releases energy
// and the flow is unstable against it.
double stability_margin(const Vec3& u, const Vec3& k, const DispersionModel& model, double mass);

// Critical velocity inf_k (E(k) + k^2/2m) / |k| over the magnitude grid,
// refined by golden-section search; a minimum pinned at the smallest scanned
// |k| is resolved by extrapolating the ratio to k -> 0 (free particles give
// v_c = 0, sound-like laws give the k -> 0 ratio).
StabilityReport critical_velocity(const DispersionModel& model, double mass,
                                  const std::vector<double>& k_magnitudes,
                                  const Vec3& direction = Vec3(1.0, 0.0, 0.0));

// Log-spaced magnitudes, a convenient default scan for critical_velocity.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace condkin

#endif
