#pragma once

#include <cmath>
#include <stdexcept>

namespace duel {

namespace detail {

inline constexpr int kQuadratureDepthCap = 60;

template <class F>
double adaptive_simpson(F& f, double a, double m, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (depth <= 0 || !(a < lm && lm < m && m < rm && rm < b))
    throw std::runtime_error("quadrature: subdivision limit reached");
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Richardson: the halved estimate is ~15x more accurate than the coarse one
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol,
                          depth - 1);
}

}  // namespace detail

// Adaptive Simpson estimate of the integral of f over [a, b] with absolute
// error target tol. Throws std::domain_error for a > b or tol <= 0 and
// std::runtime_error when the subdivision depth cap is exhausted (e.g. on a
// non-integrable singularity).
template <class F>
double quadrature(F&& f, double a, double b, double tol) {
  if (!(a <= b)) throw std::domain_error("quadrature: requires a <= b");
  if (!(tol > 0.0)) throw std::domain_error("quadrature: tol must be positive");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, m, b, fa, fm, fb, whole, tol,
                                  detail::kQuadratureDepthCap);
}

}  // namespace duel
