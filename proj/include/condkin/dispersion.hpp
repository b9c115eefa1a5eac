#ifndef CONDKIN_DISPERSION_HPP
#define CONDKIN_DISPERSION_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "condkin/vec3.hpp"

namespace condkin {

// Even real interaction kernel g(p); both built-in families are radial,
// so g(p) = g(-p) holds by construction.
class InteractionKernel {
 public:
  static InteractionKernel constant(double g0);
  static InteractionKernel gaussian(double g0, double cutoff);

  double operator()(double p_abs) const;
  double operator()(const Vec3& p) const { return (*this)(p.norm()); }
  double at_zero() const { return g0_; }

  bool is_gaussian() const { return gaussian_; }
  double amplitude() const { return g0_; }
  double cutoff() const { return cutoff_; }

 private:
  InteractionKernel(double g0, double cutoff, bool gaussian)
      : g0_(g0), cutoff_(cutoff), gaussian_(gaussian) {}
  double g0_ = 1.0;
  double cutoff_ = 1.0;
  bool gaussian_ = false;
};

// Complex-valued coupling form factor f(k, p). Only |f|^2 enters the rates.
class FormFactor {
 public:
  static FormFactor constant(std::complex<double> value = 1.0);
  // amplitude * exp(-(|k|^2 + |p|^2) / (2 cutoff^2)); decays at the box edge,
  // which keeps collision integrals insensitive to the hard momentum cutoff.
  static FormFactor gaussian(double cutoff, std::complex<double> amplitude = 1.0);

  std::complex<double> operator()(const Vec3& k, const Vec3& p) const;
  double squared_modulus(const Vec3& k, const Vec3& p) const;
  double max_squared_modulus() const { return std::norm(amplitude_); }

  bool is_gaussian() const { return gaussian_; }
  std::complex<double> amplitude() const { return amplitude_; }
  double cutoff() const { return cutoff_; }

 private:
  FormFactor(std::complex<double> amplitude, double cutoff, bool gaussian)
      : amplitude_(amplitude), cutoff_(cutoff), gaussian_(gaussian) {}
  std::complex<double> amplitude_ = 1.0;
  double cutoff_ = 1.0;
  bool gaussian_ = false;
};

// Everything physical a run needs besides the grid: mass, inverse
// temperature, condensate coupling gamma = lambda N0 / V, total density,
// interaction kernel and form factor. lambda, N0, V never appear separately.
struct PhysicalParams {
  double mass = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  double rho = 1.0;
  InteractionKernel g = InteractionKernel::constant(1.0);
  FormFactor f = FormFactor::constant();
};

// Throws InvalidConfiguration if any invariant is violated.
void validate_params(const PhysicalParams& params);

// --- excitation laws -------------------------------------------------------

struct FreeDispersion {
  double mass = 1.0;
};
struct BogoliubovBulkDispersion {
  double mass = 1.0;
  double gamma = 1.0;
  InteractionKernel g = InteractionKernel::constant(1.0);
};
struct RadiativeDispersion {
  double sound_speed = 1.0;
};
struct PolaronDispersion {
  double omega0 = 1.0;
};
// Piecewise-linear E(|k|) from samples with strictly increasing |k|;
// queries outside the sampled range extrapolate the boundary segment.
struct TabulatedDispersion {
  std::vector<double> k_abs;
  std::vector<double> energy;
};

class DispersionModel {
 public:
  using Variant = std::variant<FreeDispersion, BogoliubovBulkDispersion, RadiativeDispersion,
                               PolaronDispersion, TabulatedDispersion>;

  DispersionModel() : v_(RadiativeDispersion{1.0}) {}
  DispersionModel(Variant v);

  double operator()(double k_abs) const;
  double operator()(const Vec3& k) const { return (*this)(k.norm()); }

  const Variant& variant() const { return v_; }
  std::string name() const;

 private:
  Variant v_;
};

// Loads a two-column CSV (|k|, E) into a tabulated model. First column must
// be strictly increasing and nonnegative.
TabulatedDispersion load_tabulated_csv(const std::string& path);

// --- operations -------------------------------------------------------------

// Particle kinetic energy |p|^2 / 2m.
double epsilon(const Vec3& p, double mass);
double epsilon(double p_abs, double mass);

// E(p) = sqrt(omega^2 + 2 gamma omega g(p)), omega = |p|^2/2m.
// Throws ModelInconsistency on a negative radicand.
double bogoliubov_dispersion(const Vec3& p, const PhysicalParams& params);

// E(k) + eps(p - k) - eps(p): the energy balance of the transition p -> p-k
// with one quasiparticle of momentum k emitted.
double energy_difference(const Vec3& p, const Vec3& k, const DispersionModel& model, double mass);

// lim_{k->0} E(k)/|k|, by Richardson extrapolation on |k| in {h, h/2, h/4}.
// Throws NoSoundSpeed for divergent (polaron) or vanishing (free) limits.
double sound_speed(const DispersionModel& model);

namespace detail {

enum class ZeroLimitKind { finite, zero, divergent };
struct ZeroLimit {
  double value = 0.0;
  ZeroLimitKind kind = ZeroLimitKind::finite;
};

// Extrapolates f(h), f(h/2), f(h/4) to h -> 0. The first Richardson stage
// assumes a leading O(h) error, the second O(h^2), so linear and even series
// are both handled exactly.
template <typename F>
ZeroLimit zero_limit(F&& f, double h) {
  const double f0 = f(h);
  const double f1 = f(h / 2.0);
  const double f2 = f(h / 4.0);
  if (f1 > 1.6 * f0 && f2 > 1.6 * f1) return {f2, ZeroLimitKind::divergent};
  const double n1 = 2.0 * f1 - f0;
  const double n2 = 2.0 * f2 - f1;
  const double value = (4.0 * n2 - n1) / 3.0;
  if (value <= 1e-6 * std::abs(f0) || !(value > 0.0)) return {0.0, ZeroLimitKind::zero};
  return {value, ZeroLimitKind::finite};
}

}  // namespace detail

}  // namespace condkin

#endif
