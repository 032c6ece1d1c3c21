#include "duel/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace duel {

double firing_cdf_unclamped(const FiringStrategy& strategy, double x) {
  const Equilibrium& eq = strategy.eq;
  const int n = eq.params.n;
  const double c = eq.params.c;
  if (x <= 0.0) return 0.0;
  const double u = (1.0 - c * x) / (1.0 - x);
  const double w = std::pow(u, 1.0 / (n - 1));  // u^(1/(n-1)), so u*w = u^(n/(n-1))
  return eq.p / (1.0 - c) * ((u * w - 1.0) / n - c * (w - 1.0));
}

double firing_cdf(const FiringStrategy& strategy, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("firing_cdf: x must lie in [0, 1]");
  if (x >= strategy.eq.b) return 1.0;
  return firing_cdf_unclamped(strategy, x);
}

double firing_quantile(const FiringStrategy& strategy, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("firing_quantile: q must lie in [0, 1]");
  const double b = strategy.eq.b;
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return b;

  double lo = 0.0;
  double hi = b;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (firing_cdf_unclamped(strategy, mid) < q)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  const double slope = firing_pdf(strategy.eq, x);
  if (slope > 0.0) x -= (firing_cdf_unclamped(strategy, x) - q) / slope;
  return std::clamp(x, 0.0, b);
}

double sample_firing_distance(const FiringStrategy& strategy,
                              SplitMix64& rng) {
  return firing_quantile(strategy, rng.uniform());
}

}  // namespace duel
