#include "duel/verify.hpp"

#include <cmath>
#include <limits>

namespace duel {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  while (k-- > 0) r *= x;
  return r;
}

// Largest |lhs - rhs| over a uniform grid of [0, hi]. The grid fraction is
// formed first so the last point lands exactly on hi.
template <class Lhs, class Rhs>
double max_abs_gap(double hi, int points, Lhs&& lhs, Rhs&& rhs) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = hi * (static_cast<double>(i) / (points - 1));
    worst = std::max(worst, std::abs(lhs(x) - rhs(x)));
  }
  return worst;
}

}  // namespace

bool CheckReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

CheckTolerances CheckTolerances::scaled(double s) {
  CheckTolerances t;
  t.root_residual *= s;
  t.accounting *= s;
  t.atom *= s;
  t.endpoint *= s;
  t.pdf_fd_relative *= s;
  t.normalization *= s;
  t.firing_cdf_vs_quadrature *= s;
  t.firing_cdf_endpoint *= s;
  t.quantile_roundtrip *= s;
  t.special_case *= s;
  return t;
}

double deviation_payoff(const Equilibrium& eq, double y) {
  if (!(y >= 0.0 && y < 1.0))
    throw std::domain_error("deviation_payoff: y must lie in [0, 1)");
  const int n = eq.params.n;
  return (1.0 - y) * ipow(score_cdf(eq, y), n - 1) +
         eq.params.c * y * ipow(eq.p, n - 1);
}

DeviationReport best_response_report(const Equilibrium& eq, int grid_size) {
  if (grid_size < 2)
    throw std::domain_error("best_response_report: grid_size must be >= 2");
  const double y_max = 1.0 - 1e-9;

  DeviationReport report;
  report.v = eq.v;
  report.grid.reserve(grid_size);
  report.payoff.reserve(grid_size);
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double y = y_max * i / (grid_size - 1);
    const double pi = deviation_payoff(eq, y);
    report.grid.push_back(y);
    report.payoff.push_back(pi);
    if (y <= eq.b)
      report.max_gap_on_support =
          std::max(report.max_gap_on_support, std::abs(pi - eq.v));
    report.max_excess = std::max(report.max_excess, pi - eq.v);
  }
  return report;
}

CheckReport run_checks(const Equilibrium& eq, const CheckTolerances& tol) {
  CheckReport report;
  const int n = eq.params.n;
  const double c = eq.params.c;
  const FiringStrategy strategy{eq};

  auto add = [&](const std::string& id, double residual, double tolerance,
                 bool pass) {
    report.checks.push_back(CheckResult{id, residual, tolerance, pass});
  };
  auto add_abs = [&](const std::string& id, double residual,
                     double tolerance) {
    add(id, residual, tolerance, std::abs(residual) <= tolerance);
  };
  auto guarded = [&](const std::string& id, auto&& body) {
    try {
      body();
    } catch (const std::exception&) {
      add(id, std::numeric_limits<double>::infinity(), 0.0, false);
    }
  };

  // Root residual of the defining polynomial in z = 1/p.
  add_abs("root_residual", polynomial_residual(eq.params, 1.0 / eq.p),
          tol.root_residual);

  // Total payout accounting: n v = (1 - p^n) + n c p^n.
  const double pn = ipow(eq.p, n);
  add_abs("accounting", n * eq.v - (1.0 - pn) - n * c * pn, tol.accounting);

  // No atom at 0: F(0) = p.
  add_abs("atom_size", score_cdf(eq, 0.0) - eq.p, tol.atom);

  // Support endpoint: F(b) = 1 through the closed form.
  add_abs("cdf_endpoint", score_cdf(eq, eq.b) - 1.0, tol.endpoint);

  // F nondecreasing on [-1, 1], strictly increasing on [0, b].
  {
    constexpr int kPoints = 1001;
    double min_inc = std::numeric_limits<double>::infinity();
    double min_inc_support = std::numeric_limits<double>::infinity();
    double prev = score_cdf(eq, -1.0);
    double prev_y = -1.0;
    for (int i = 1; i < kPoints; ++i) {
      const double y = -1.0 + 2.0 * i / (kPoints - 1);
      const double cur = score_cdf(eq, y);
      const double inc = cur - prev;
      min_inc = std::min(min_inc, inc);
      if (prev_y >= 0.0 && y <= eq.b)
        min_inc_support = std::min(min_inc_support, inc);
      prev = cur;
      prev_y = y;
    }
    add("cdf_monotone", std::min(min_inc, 0.0), 0.0,
        min_inc >= 0.0 && min_inc_support > 0.0);
  }

  // f against centered finite differences of F on [0.01 b, 0.99 b].
  {
    constexpr int kPoints = 99;
    constexpr double kStep = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const double y = eq.b * (0.01 + 0.98 * i / (kPoints - 1));
      const double fd =
          (score_cdf(eq, y + kStep) - score_cdf(eq, y - kStep)) / (2.0 * kStep);
      const double f = score_pdf(eq, y);
      worst = std::max(worst, std::abs(fd - f) / std::abs(f));
    }
    add_abs("pdf_vs_finite_difference", worst, tol.pdf_fd_relative);
  }

  // g integrates to 1 over [0, b].
  guarded("normalization", [&] {
    const double mass =
        quadrature([&](double x) { return firing_pdf(eq, x); }, 0.0, eq.b,
                   tol.normalization * 1e-2);
    add_abs("normalization", mass - 1.0, tol.normalization);
  });

  // Closed-form G against cumulative quadrature of g on a grid of [0, b].
  guarded("firing_cdf_vs_quadrature", [&] {
    constexpr int kPoints = 100;
    const double panel_tol = tol.firing_cdf_vs_quadrature / kPoints;
    double integral = 0.0;
    double prev_x = 0.0;
    double worst = 0.0;
    for (int i = 1; i < kPoints; ++i) {
      const double x = eq.b * (static_cast<double>(i) / (kPoints - 1));
      integral += quadrature([&](double t) { return firing_pdf(eq, t); },
                             prev_x, x, panel_tol);
      worst = std::max(worst,
                       std::abs(firing_cdf_unclamped(strategy, x) - integral));
      prev_x = x;
    }
    add_abs("firing_cdf_vs_quadrature", worst, tol.firing_cdf_vs_quadrature);
  });

  // G(b) = 1 without the clamp (normalization seen through the closed form).
  add_abs("firing_cdf_endpoint", firing_cdf_unclamped(strategy, eq.b) - 1.0,
          tol.firing_cdf_endpoint);

  // Quantile round trip on a grid of (0, 1).
  {
    constexpr int kPoints = 100;
    double worst = 0.0;
    for (int i = 1; i <= kPoints; ++i) {
      const double q = static_cast<double>(i) / (kPoints + 1);
      worst = std::max(
          worst, std::abs(firing_cdf(strategy, firing_quantile(strategy, q)) -
                          q));
    }
    add_abs("quantile_roundtrip", worst, tol.quantile_roundtrip);
  }

  // Constant-sum collapse, c = 1/n: F from the (n - y) form and g from its
  // closed form.
  if (std::abs(c - 1.0 / n) <= 1e-15) {
    const double ex = 1.0 / (n - 1);
    const double worst_f = max_abs_gap(
        eq.b, 101, [&](double y) { return score_cdf(eq, y); },
        [&](double y) {
          return std::pow((n - y) / (n * n * (1.0 - y)), ex);
        });
    const double worst_g = max_abs_gap(
        eq.b, 101, [&](double x) { return firing_pdf(eq, x); },
        [&](double x) {
          return std::pow(n * n * ipow(1.0 - x, 2 * n - 1) * ipow(n - x, n - 2),
                          -ex);
        });
    add_abs("constant_sum_collapse", std::max(worst_f, worst_g),
            tol.special_case);
  }

  // Prize competition collapse, c = 0.
  if (c == 0.0) {
    const double worst_f_cdf = max_abs_gap(
        eq.b, 101, [&](double y) { return score_cdf(eq, y); },
        [&](double y) { return eq.p * std::pow(1.0 - y, -1.0 / (n - 1)); });
    const double worst_pdf = max_abs_gap(
        eq.b, 101, [&](double y) { return score_pdf(eq, y); },
        [&](double y) {
          return eq.p / (n - 1) *
                 std::pow(1.0 - y, -static_cast<double>(n) / (n - 1));
        });
    const double worst_g = max_abs_gap(
        eq.b, 101, [&](double x) { return firing_pdf(eq, x); },
        [&](double x) {
          return eq.p / (n - 1) *
                 std::pow(1.0 - x, -(2.0 * n - 1.0) / (n - 1));
        });
    add_abs("prize_competition_collapse",
            std::max({worst_f_cdf, worst_pdf, worst_g}), tol.special_case);
  }

  return report;
}

}  // namespace duel
