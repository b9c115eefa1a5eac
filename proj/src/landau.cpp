#include "condkin/landau.hpp"

#include <algorithm>
#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/quadrature.hpp"

namespace condkin {

double stability_margin(const Vec3& u, const Vec3& k, const DispersionModel& model, double mass) {
  return model(k) - u.dot(k) + k.norm2() / (2.0 * mass);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw InvalidConfiguration("landau", "log-spaced grid needs 0 < lo < hi and count >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (count - 1));
  return out;
}

StabilityReport critical_velocity(const DispersionModel& model, double mass,
                                  const std::vector<double>& k_magnitudes,
                                  const Vec3& direction) {
  if (k_magnitudes.empty())
    throw InvalidConfiguration("landau", "critical velocity scan needs a nonempty k grid");
  const double dn = direction.norm();
  if (!(dn > 0.0)) throw InvalidConfiguration("landau", "scan direction must be nonzero");
  const Vec3 e = direction * (1.0 / dn);

  // worst-case direction is k parallel to u, so the scan is 1-d in |k|
  auto ratio = [&](double k_abs) {
    return (model(e * k_abs) + k_abs * k_abs / (2.0 * mass)) / k_abs;
  };

  std::size_t best = 0;
  double best_val = ratio(k_magnitudes[0]);
  for (std::size_t i = 1; i < k_magnitudes.size(); ++i) {
    double v = ratio(k_magnitudes[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  StabilityReport report;
  if (best == 0) {
    // minimum pinned at the left edge: classify the k -> 0 limit
    auto limit = detail::zero_limit(ratio, k_magnitudes[0]);
    if (limit.kind == detail::ZeroLimitKind::zero) {
      report.v_c = 0.0;
    } else if (limit.kind == detail::ZeroLimitKind::finite) {
      report.v_c = limit.value;
    } else {
      // ratio grows toward k -> 0, so the edge value itself is the scan minimum
      report.v_c = best_val;
      report.argmin_k = k_magnitudes[0];
      return report;
    }
    report.argmin_k = 0.0;
    report.infimum_at_zero = true;
    return report;
  }

  const double a = k_magnitudes[best - 1];
  const double b = best + 1 < k_magnitudes.size() ? k_magnitudes[best + 1] : k_magnitudes[best];
  const double k_star = numerics::golden_section_minimize(ratio, a, b, 1e-12);
  report.v_c = ratio(k_star);
  report.argmin_k = k_star;
  return report;
}

}  // namespace condkin
