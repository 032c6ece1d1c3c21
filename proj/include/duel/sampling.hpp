#pragma once

#include "duel/equilibrium.hpp"
#include "duel/rng.hpp"

namespace duel {

// Equilibrium mixed strategy over firing distances. The distance X is drawn
// from the CDF G with density g = firing_pdf; G is continuous and strictly
// increasing on [0, b] with G(0) = 0 and G(b) = 1.
struct FiringStrategy {
  Equilibrium eq;
};

// Closed form of G obtained by integrating g with the substitution
// u = (1 - c x) / (1 - x):
//
//   G(x) = p/(1-c) [ (u^(n/(n-1)) - 1)/n - c (u^(1/(n-1)) - 1) ],
//
// clamped to 1 for x >= b. Validated against adaptive quadrature of
// firing_pdf (see run_checks). Throws std::domain_error outside [0, 1].
double firing_cdf(const FiringStrategy& strategy, double x);

// The closed form above without the clamp at b; used by consistency checks
// that want the raw value of the antiderivative at the support endpoint.
double firing_cdf_unclamped(const FiringStrategy& strategy, double x);

// Unique x in [0, b] with G(x) = q: bisection to 1e-12 interval width
// followed by one Newton polish using g. Throws std::domain_error outside
// [0, 1].
double firing_quantile(const FiringStrategy& strategy, double q);

// Inverse-transform draw: firing_quantile(U) for U = rng.uniform().
// Identical generator state gives an identical sample sequence.
double sample_firing_distance(const FiringStrategy& strategy, SplitMix64& rng);

}  // namespace duel
