#ifndef CONDKIN_QUADRATURE_HPP
#define CONDKIN_QUADRATURE_HPP

#include <cmath>
#include <cstddef>

namespace condkin::numerics {

namespace detail {

template <typename F>
double simpson_recurse(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Golden-section search for the minimum of a unimodal f on [a, b].
template <typename F>
double golden_section_minimize(F&& f, double a, double b, double rel_tol, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > rel_tol * (std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace condkin::numerics

#endif
