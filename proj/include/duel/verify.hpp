#pragma once

#include <string>
#include <vector>

#include "duel/equilibrium.hpp"
#include "duel/quadrature.hpp"
#include "duel/sampling.hpp"

namespace duel {

// Numerical certificate for a solved equilibrium. A pure deviation to firing
// distance y earns
//
//     Pi(y) = (1 - y) F(y)^(n-1) + c y p^(n-1),
//
// which equals v on the support [0, b] (indifference) and falls strictly
// below v past b (dominance). best_response_report evaluates Pi on a grid;
// run_checks runs the closed-form identities (root residual, accounting,
// atom size, endpoint, monotonicity, derivative consistency, normalization,
// quantile round trip, special-case collapses).

struct DeviationReport {
  std::vector<double> grid;    // y values in [0, 1 - 1e-9]
  std::vector<double> payoff;  // Pi(y) per grid point
  double v = 0.0;
  double max_gap_on_support = 0.0;  // max |Pi(y) - v| over grid points <= b
  double max_excess = 0.0;          // max Pi(y) - v over the whole grid
};

struct CheckResult {
  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Per-check tolerance defaults; scaled(s) multiplies every default by s,
// one knob for tightening or loosening the whole suite.
struct CheckTolerances {
  double root_residual = 1e-10;
  double accounting = 1e-10;
  double atom = 1e-12;
  double endpoint = 1e-10;
  double pdf_fd_relative = 1e-5;
  double normalization = 1e-8;
  double firing_cdf_vs_quadrature = 1e-8;
  double firing_cdf_endpoint = 1e-10;
  double quantile_roundtrip = 1e-9;
  double special_case = 1e-12;

  static CheckTolerances scaled(double s);
};

// Pi(y) above. Throws std::domain_error outside [0, 1).
double deviation_payoff(const Equilibrium& eq, double y);

// Pi on a uniform grid of [0, 1 - 1e-9] with grid_size points (>= 2; the
// endpoint y = 1 is excluded since firing at maximum distance is dominated).
DeviationReport best_response_report(const Equilibrium& eq, int grid_size);

// Runs every identity check against eq. Failures are reported in the
// returned CheckReport, never thrown.
CheckReport run_checks(const Equilibrium& eq,
                       const CheckTolerances& tol = CheckTolerances{});

}  // namespace duel
