#include "condkin/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "condkin/errors.hpp"

namespace condkin {

InteractionKernel InteractionKernel::constant(double g0) { return {g0, 0.0, false}; }

InteractionKernel InteractionKernel::gaussian(double g0, double cutoff) {
  return {g0, cutoff, true};
}

double InteractionKernel::operator()(double p_abs) const {
  if (!gaussian_) return g0_;
  double u = p_abs / cutoff_;
  return g0_ * std::exp(-u * u);
}

FormFactor FormFactor::constant(std::complex<double> value) { return {value, 0.0, false}; }

FormFactor FormFactor::gaussian(double cutoff, std::complex<double> amplitude) {
  return {amplitude, cutoff, true};
}

std::complex<double> FormFactor::operator()(const Vec3& k, const Vec3& p) const {
  if (!gaussian_) return amplitude_;
  return amplitude_ * std::exp(-(k.norm2() + p.norm2()) / (2.0 * cutoff_ * cutoff_));
}

double FormFactor::squared_modulus(const Vec3& k, const Vec3& p) const {
  if (!gaussian_) return std::norm(amplitude_);
  return std::norm(amplitude_) * std::exp(-(k.norm2() + p.norm2()) / (cutoff_ * cutoff_));
}

void validate_params(const PhysicalParams& params) {
  if (!(params.mass > 0.0)) throw InvalidConfiguration("dispersion", "mass must be positive");
  if (!(params.beta > 0.0))
    throw InvalidConfiguration("dispersion", "inverse temperature must be positive");
  if (params.gamma < 0.0)
    throw InvalidConfiguration("dispersion", "coupling gamma must be nonnegative");
  if (!(params.rho > 0.0))
    throw InvalidConfiguration("dispersion", "total density must be positive");
  if (params.gamma > 0.0 && !(params.g.at_zero() > 0.0))
    throw InvalidConfiguration("dispersion",
                               "g(0) must be positive when gamma > 0 (repulsion must dominate)");
}

DispersionModel::DispersionModel(Variant v) : v_(std::move(v)) {}

namespace {

double tabulated_energy(const TabulatedDispersion& t, double k_abs) {
  const auto& xs = t.k_abs;
  const auto& es = t.energy;
  std::size_t n = xs.size();
  if (n == 1) return es[0];
  // nearest segment, extrapolated beyond the table ends
  std::size_t hi = std::upper_bound(xs.begin(), xs.end(), k_abs) - xs.begin();
  if (hi == 0) hi = 1;
  if (hi >= n) hi = n - 1;
  std::size_t lo = hi - 1;
  double w = (k_abs - xs[lo]) / (xs[hi] - xs[lo]);
  return es[lo] + w * (es[hi] - es[lo]);
}

}  // namespace

double DispersionModel::operator()(double k_abs) const {
  return std::visit(
      [k_abs](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FreeDispersion>) {
          return epsilon(k_abs, m.mass);
        } else if constexpr (std::is_same_v<T, BogoliubovBulkDispersion>) {
          double omega = epsilon(k_abs, m.mass);
          double radicand = omega * omega + 2.0 * m.gamma * omega * m.g(k_abs);
          if (radicand < 0.0)
            throw ModelInconsistency("dispersion",
                                     "negative radicand in the excitation law (attractive regime)");
          return std::sqrt(radicand);
        } else if constexpr (std::is_same_v<T, RadiativeDispersion>) {
          return m.sound_speed * k_abs;
        } else if constexpr (std::is_same_v<T, PolaronDispersion>) {
          return m.omega0;
        } else {
          return tabulated_energy(m, k_abs);
        }
      },
      v_);
}

std::string DispersionModel::name() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FreeDispersion>) return "free";
        if constexpr (std::is_same_v<T, BogoliubovBulkDispersion>) return "bogoliubov";
        if constexpr (std::is_same_v<T, RadiativeDispersion>) return "radiative";
        if constexpr (std::is_same_v<T, PolaronDispersion>) return "polaron";
        return "tabulated";
      },
      v_);
}

TabulatedDispersion load_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfiguration("dispersion", "cannot open dispersion table: " + path);
  TabulatedDispersion t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double k = 0.0, e = 0.0;
    if (!(row >> k >> e))
      throw InvalidConfiguration(
          "dispersion", "bad dispersion table row at line " + std::to_string(lineno) + ": " + line);
    if (k < 0.0)
      throw InvalidConfiguration("dispersion",
                                 "dispersion table |k| must be nonnegative (line " +
                                     std::to_string(lineno) + ")");
    if (e < 0.0)
      throw InvalidConfiguration("dispersion",
                                 "dispersion table energies must be nonnegative (line " +
                                     std::to_string(lineno) + ")");
    if (!t.k_abs.empty() && k <= t.k_abs.back())
      throw InvalidConfiguration("dispersion",
                                 "dispersion table |k| must be strictly increasing (line " +
                                     std::to_string(lineno) + ")");
    t.k_abs.push_back(k);
    t.energy.push_back(e);
  }
  if (t.k_abs.size() < 2)
    throw InvalidConfiguration("dispersion", "dispersion table needs at least two rows: " + path);
  return t;
}

double epsilon(double p_abs, double mass) {
  if (!(mass > 0.0)) throw InvalidConfiguration("dispersion", "mass must be positive");
  return p_abs * p_abs / (2.0 * mass);
}

double epsilon(const Vec3& p, double mass) {
  if (!(mass > 0.0)) throw InvalidConfiguration("dispersion", "mass must be positive");
  return p.norm2() / (2.0 * mass);
}

double bogoliubov_dispersion(const Vec3& p, const PhysicalParams& params) {
  double omega = epsilon(p, params.mass);
  double radicand = omega * omega + 2.0 * params.gamma * omega * params.g(p);
  if (radicand < 0.0)
    throw ModelInconsistency("dispersion",
                             "negative radicand in the excitation law (attractive regime)");
  return std::sqrt(radicand);
}

double energy_difference(const Vec3& p, const Vec3& k, const DispersionModel& model, double mass) {
  return model(k) + epsilon(p - k, mass) - epsilon(p, mass);
}

double sound_speed(const DispersionModel& model) {
  const double h = 1e-2;
  auto ratio = [&model](double k) { return model(k) / k; };
  auto limit = detail::zero_limit(ratio, h);
  if (limit.kind == detail::ZeroLimitKind::divergent)
    throw NoSoundSpeed("dispersion", "E(k)/|k| diverges as k -> 0 for model " + model.name());
  if (limit.kind == detail::ZeroLimitKind::zero)
    throw NoSoundSpeed("dispersion", "E(k)/|k| vanishes as k -> 0 for model " + model.name());
  return limit.value;
}

}  // namespace condkin
