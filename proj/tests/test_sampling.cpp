#include <cmath>
#include <doctest.h>
#include <vector>

#include "duel/equilibrium.hpp"
#include "duel/quadrature.hpp"
#include "duel/sampling.hpp"
#include "oracles.hpp"

using namespace duel;

TEST_CASE("firing_cdf endpoints and domain") {
  const FiringStrategy s{solve_equilibrium({3, 0.2})};
  CHECK(firing_cdf(s, 0.0) == 0.0);
  CHECK(firing_cdf(s, s.eq.b) == 1.0);
  CHECK(firing_cdf(s, 1.0) == 1.0);
  CHECK(std::abs(firing_cdf_unclamped(s, s.eq.b) - 1.0) < 1e-10);
  CHECK_THROWS_AS(firing_cdf(s, -0.01), std::domain_error);
  CHECK_THROWS_AS(firing_cdf(s, 1.01), std::domain_error);
}

TEST_CASE("firing_cdf c=0 specialization") {
  const FiringStrategy s{solve_equilibrium({2, 0.0})};
  // (p/2)((1 - x)^(-2) - 1) at x = 0.3, frozen via the quadratic-root p
  CHECK(std::abs(firing_cdf(s, 0.3) - 0.21556011919416185) < 1e-12);
  const double p = s.eq.p;
  for (int i = 0; i <= 20; ++i) {
    const double x = s.eq.b * (i / 20.0);
    const double expected = p / 2.0 * (std::pow(1.0 - x, -2.0) - 1.0);
    CHECK(std::abs(firing_cdf(s, x) - expected) < 1e-12);
  }
}

TEST_CASE("closed-form firing_cdf equals quadrature of firing_pdf") {
  for (int n : {2, 3, 4, 6}) {
    for (double c : {0.0, 0.1, 1.0 / n, 0.5, 0.9}) {
      CAPTURE(n);
      CAPTURE(c);
      const FiringStrategy s{solve_equilibrium({n, c})};
      double integral = 0.0;
      double prev = 0.0;
      for (int i = 1; i < 100; ++i) {
        const double x = s.eq.b * (i / 99.0);
        integral += quadrature(
            [&](double t) { return firing_pdf(s.eq, t); }, prev, x, 1e-11);
        CHECK(std::abs(firing_cdf_unclamped(s, x) - integral) < 1e-8);
        prev = x;
      }
    }
  }
}

TEST_CASE("quantile endpoints, domain, and round trip") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  CHECK(firing_quantile(s, 0.0) == 0.0);
  CHECK(firing_quantile(s, 1.0) == s.eq.b);
  CHECK_THROWS_AS(firing_quantile(s, -0.1), std::domain_error);
  CHECK_THROWS_AS(firing_quantile(s, 1.1), std::domain_error);

  for (int n : {2, 3, 6}) {
    for (double c : {0.0, 1.0 / n, 0.9}) {
      const FiringStrategy strat{solve_equilibrium({n, c})};
      for (int i = 1; i <= 100; ++i) {
        const double q = i / 101.0;
        const double x = firing_quantile(strat, q);
        CHECK(x >= 0.0);
        CHECK(x <= strat.eq.b);
        CHECK(std::abs(firing_cdf(strat, x) - q) <= 1e-9);
      }
    }
  }
}

TEST_CASE("quantile inverts the median of the classic duel") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  const double x = firing_quantile(s, 0.5);
  CHECK(std::abs(firing_cdf(s, x) - 0.5) < 1e-10);
  CHECK(x > 0.0);
  CHECK(x < s.eq.b);
}

TEST_CASE("sampling is deterministic under a fixed seed") {
  const FiringStrategy s{solve_equilibrium({3, 0.0})};
  SplitMix64 rng_a(12345);
  SplitMix64 rng_b(12345);
  for (int i = 0; i < 32; ++i) {
    const double a = sample_firing_distance(s, rng_a);
    const double b = sample_firing_distance(s, rng_b);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= s.eq.b);
  }
  // a different seed diverges immediately
  SplitMix64 rng_c(54321);
  CHECK(sample_firing_distance(s, rng_c) !=
        sample_firing_distance(s, rng_a));
}

TEST_CASE("empirical CDF of samples passes a KS test against firing_cdf") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  constexpr int kSamples = 10000;
  SplitMix64 rng(777);
  std::vector<double> samples;
  samples.reserve(kSamples);
  for (int i = 0; i < kSamples; ++i)
    samples.push_back(sample_firing_distance(s, rng));
  const double d = oracles::ks_statistic(
      std::move(samples), [&](double x) { return firing_cdf(s, x); });
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(kSamples)));  // 1% level
}

TEST_CASE("mean firing distance equals the miss probability") {
  // P(miss) = E[X] under the hit model, and the equilibrium pins it at p
  for (int n : {2, 4}) {
    for (double c : {0.0, 0.5}) {
      const Equilibrium eq = solve_equilibrium({n, c});
      const double mean_x = quadrature(
          [&](double x) { return x * firing_pdf(eq, x); }, 0.0, eq.b, 1e-10);
      CHECK(std::abs(mean_x - eq.p) < 1e-8);
    }
  }
}

TEST_CASE("per-player miss frequency reproduces p") {
  const FiringStrategy s{solve_equilibrium({3, 1.0 / 3.0})};
  constexpr int kRounds = 100000;
  SplitMix64 rng(31337);
  int misses = 0;
  for (int i = 0; i < kRounds; ++i) {
    const double x = sample_firing_distance(s, rng);
    if (!(rng.uniform() < 1.0 - x)) ++misses;
  }
  const double freq = static_cast<double>(misses) / kRounds;
  CHECK(std::abs(freq - s.eq.p) <=
        3.0 * oracles::binomial_se(s.eq.p, kRounds));
}

TEST_CASE("substream keys are stable and distinct") {
  CHECK(substream_key(42, 0) == substream_key(42, 0));
  CHECK(substream_key(42, 0) != substream_key(42, 1));
  CHECK(substream_key(42, 7) != substream_key(43, 7));
}
