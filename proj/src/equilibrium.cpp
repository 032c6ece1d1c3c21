#include "duel/equilibrium.hpp"

#include <cmath>

namespace duel {

namespace {

// x^k for small non-negative integer k, by repeated multiplication
double ipow(double x, int k) {
  double r = 1.0;
  while (k-- > 0) r *= x;
  return r;
}

}  // namespace

void validate(const GameParams& params) {
  if (params.n < 2) throw std::domain_error("n must be at least 2");
  if (!(params.c >= 0.0 && params.c < 1.0))
    throw std::domain_error("c must lie in [0, 1)");
}

double polynomial_residual(const GameParams& params, double z) {
  return ipow(z, params.n) - params.n * z - (1.0 - params.n * params.c);
}

double solve_miss_probability(const GameParams& params, double tol) {
  validate(params);
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");

  const int n = params.n;
  auto phi = [&](double z) { return polynomial_residual(params, z); };
  auto dphi = [&](double z) { return n * (ipow(z, n - 1) - 1.0); };
  auto converged = [&](double z, double fz) {
    return std::abs(fz) <= tol * std::max(1.0, ipow(z, n));
  };

  // phi(1) = n(c - 1) < 0 and phi is strictly increasing past 1, so the root
  // is bracketed by [1 + eps, hi] once phi(hi) > 0. hi <= 4 in practice.
  double lo = 1.0 + 1e-12;
  double hi = 2.0;
  for (int i = 0; phi(hi) <= 0.0; ++i) {
    hi *= 2.0;
    if (i > 64) throw std::runtime_error("failed to bracket the root");
  }

  // One extra Newton step once the residual tolerance is met; quadratic
  // convergence takes the root to machine precision.
  auto polish = [&](double z) {
    const double next = z - phi(z) / dphi(z);
    return (next > 1.0 && std::abs(phi(next)) <= std::abs(phi(z))) ? next : z;
  };

  double z = 0.5 * (lo + hi);
  for (int it = 0; it < kSolveIterationCap; ++it) {
    const double fz = phi(z);
    if (converged(z, fz)) return 1.0 / polish(z);
    if (fz > 0.0)
      hi = z;
    else
      lo = z;
    double next = z - fz / dphi(z);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection step
    if (next == z) break;  // stagnated at machine precision
    z = next;
  }
  if (converged(z, phi(z))) return 1.0 / polish(z);
  throw std::runtime_error("miss probability solve did not converge");
}

Equilibrium solve_equilibrium(const GameParams& params, double tol) {
  const double p = solve_miss_probability(params, tol);
  const double v = ipow(p, params.n - 1);
  const double b = (1.0 - v) / (1.0 - params.c * v);
  return Equilibrium{params, p, v, b};
}

double score_cdf(const Equilibrium& eq, double y) {
  if (!(y >= -1.0 && y <= 1.0))
    throw std::domain_error("score_cdf: y must lie in [-1, 1]");
  if (y < 0.0) return eq.p;
  if (y > eq.b) return 1.0;
  const double u = (1.0 - eq.params.c * y) / (1.0 - y);
  return eq.p * std::pow(u, 1.0 / (eq.params.n - 1));
}

double score_pdf(const Equilibrium& eq, double y) {
  if (!(y >= 0.0 && y <= eq.b)) return 0.0;
  const int n = eq.params.n;
  const double c = eq.params.c;
  return score_cdf(eq, y) * (1.0 - c) /
         ((n - 1) * (1.0 - c * y) * (1.0 - y));
}

double firing_pdf(const Equilibrium& eq, double x) {
  if (!(x >= 0.0 && x <= eq.b)) return 0.0;
  return score_pdf(eq, x) / (1.0 - x);
}

}  // namespace duel
