#include <algorithm>
#include <array>
#include <cmath>
#include <doctest.h>
#include <numeric>

#include "duel/simulation.hpp"
#include "oracles.hpp"

using namespace duel;

TEST_CASE("score ordering") {
  CHECK(Score::miss() < Score::hit(0.0));
  CHECK(Score::hit(0.0) < Score::hit(0.5));
  CHECK(Score::hit(0.5) == Score::hit(0.5));
  CHECK(Score::miss() == Score::miss());
  CHECK_THROWS_AS(Score::hit(1.0), std::domain_error);
  CHECK_THROWS_AS(Score::hit(-0.1), std::domain_error);
}

TEST_CASE("allocate_payoffs base cases") {
  using V = std::vector<Score>;
  const V a{Score::hit(0.4), Score::hit(0.7), Score::miss()};
  CHECK(allocate_payoffs(a, 0.2) == std::vector<double>{0.0, 1.0, 0.0});

  const V b{Score::miss(), Score::miss(), Score::miss()};
  CHECK(allocate_payoffs(b, 0.2) == std::vector<double>{0.2, 0.2, 0.2});

  const V c{Score::hit(0.5), Score::hit(0.5)};
  CHECK(allocate_payoffs(c, 0.0) == std::vector<double>{0.5, 0.5});

  // point-blank hit still beats a miss, whatever the consolation prize
  const V d{Score::hit(0.0), Score::miss()};
  CHECK(allocate_payoffs(d, 0.9) == std::vector<double>{1.0, 0.0});

  CHECK_THROWS_AS(allocate_payoffs(V{}, 0.2), std::domain_error);
}

TEST_CASE("payoffs conserve the prize on every hit pattern") {
  const std::array<double, 4> distances{0.1, 0.3, 0.3, 0.7};
  const double c = 0.2;
  for (int n = 2; n <= 4; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<Score> scores;
      for (int i = 0; i < n; ++i)
        scores.push_back(mask & (1 << i) ? Score::hit(distances[i])
                                         : Score::miss());
      const std::vector<double> payoffs = allocate_payoffs(scores, c);
      const double total =
          std::accumulate(payoffs.begin(), payoffs.end(), 0.0);
      const double expected = mask == 0 ? n * c : 1.0;
      CHECK(std::abs(total - expected) < 1e-12);
      for (double pay : payoffs) CHECK(pay >= 0.0);
    }
  }
}

TEST_CASE("allocate_payoffs is permutation-equivariant") {
  const std::vector<Score> base{Score::hit(0.2), Score::miss(),
                                Score::hit(0.6), Score::hit(0.6)};
  const std::vector<double> base_pay = allocate_payoffs(base, 0.3);
  std::array<int, 4> idx{0, 1, 2, 3};
  do {
    std::vector<Score> permuted;
    for (int i : idx) permuted.push_back(base[i]);
    const std::vector<double> pay = allocate_payoffs(permuted, 0.3);
    for (int k = 0; k < 4; ++k) CHECK(pay[k] == base_pay[idx[k]]);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("play_round is replayable and self-consistent") {
  const FiringStrategy s{solve_equilibrium({3, 0.2})};
  SplitMix64 rng_a(99);
  SplitMix64 rng_b(99);
  const RoundOutcome a = play_round(s, rng_a);
  const RoundOutcome b = play_round(s, rng_b);
  CHECK(a.distances == b.distances);
  CHECK(a.hits == b.hits);
  CHECK(a.payoffs == b.payoffs);

  for (double x : a.distances) {
    CHECK(x >= 0.0);
    CHECK(x <= s.eq.b);
  }
  CHECK(a.payoffs == allocate_payoffs(a.scores, s.eq.params.c));
}

TEST_CASE("deviating player 0 leaves the other players' stream untouched") {
  const FiringStrategy s{solve_equilibrium({3, 0.2})};
  SplitMix64 rng_a(4242);
  SplitMix64 rng_b(4242);
  const RoundOutcome eq_round = play_round(s, rng_a);
  const RoundOutcome dev_round = play_round(s, rng_b, 0.97);
  CHECK(dev_round.distances[0] == 0.97);
  for (std::size_t i = 1; i < eq_round.distances.size(); ++i) {
    CHECK(dev_round.distances[i] == eq_round.distances[i]);
    CHECK(dev_round.hits[i] == eq_round.hits[i]);
  }
  CHECK_THROWS_AS(play_round(s, rng_a, 1.0), std::domain_error);
}

TEST_CASE("simulate input validation and degenerate statistics") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  CHECK_THROWS_AS(simulate(s, 0, 1), std::domain_error);
  CHECK_THROWS_AS(simulate(s, -5, 1), std::domain_error);
  CHECK_THROWS_AS(simulate(s, 10, 1, 0), std::domain_error);

  const SimStats one = simulate(s, 1, 7);
  CHECK(one.rounds == 1);
  CHECK(one.std_error == 0.0);
  CHECK(one.degenerate_stats);
  CHECK(!one.deviation_distance.has_value());
}

TEST_CASE("simulate equals a play_round replay") {
  const FiringStrategy s{solve_equilibrium({2, 0.0})};
  constexpr int kRounds = 250;
  const SimStats stats = simulate(s, kRounds, 31);
  double sum = 0.0;
  int all_miss = 0;
  for (int r = 0; r < kRounds; ++r) {
    SplitMix64 rng = round_rng(31, static_cast<std::uint64_t>(r));
    const RoundOutcome out = play_round(s, rng);
    sum += out.payoffs[0];
    all_miss += std::none_of(out.hits.begin(), out.hits.end(),
                             [](bool h) { return h; })
                    ? 1
                    : 0;
  }
  CHECK(stats.mean_payoff == sum / kRounds);
  CHECK(stats.all_miss_freq == static_cast<double>(all_miss) / kRounds);
}

TEST_CASE("simulate is bit-identical across runs and thread counts") {
  const FiringStrategy s{solve_equilibrium({3, 1.0 / 3.0})};
  const SimStats a = simulate(s, 20000, 42, 1);
  const SimStats b = simulate(s, 20000, 42, 1);
  const SimStats c = simulate(s, 20000, 42, 4);
  const SimStats d = simulate(s, 20000, 42, 7);
  CHECK(a.mean_payoff == b.mean_payoff);
  CHECK(a.mean_payoff == c.mean_payoff);
  CHECK(a.mean_payoff == d.mean_payoff);
  CHECK(a.std_error == c.std_error);
  CHECK(a.std_error == d.std_error);
  CHECK(a.all_miss_freq == c.all_miss_freq);
  CHECK(a.all_miss_freq == d.all_miss_freq);
}

TEST_CASE("simulated payoff and all-miss frequency match the equilibrium") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  constexpr std::int64_t kRounds = 100000;
  const SimStats stats = simulate(s, kRounds, 5);
  CHECK(std::abs(stats.mean_payoff - s.eq.v) <= 3.0 * stats.std_error);
  const double pn = s.eq.p * s.eq.p;
  CHECK(std::abs(stats.all_miss_freq - pn) <=
        3.0 * oracles::binomial_se(pn, kRounds));
}

TEST_CASE("simulate_deviation validates y and records it") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  CHECK_THROWS_AS(simulate_deviation(s, -0.1, 10, 1), std::domain_error);
  CHECK_THROWS_AS(simulate_deviation(s, 1.0, 10, 1), std::domain_error);

  const SimStats at_zero = simulate_deviation(s, 0.0, 100000, 11);
  CHECK(at_zero.deviation_distance == 0.0);
  CHECK(std::abs(at_zero.mean_payoff - s.eq.v) <= 3.0 * at_zero.std_error);
}

TEST_CASE("deviating past the support endpoint loses") {
  const FiringStrategy s{solve_equilibrium({2, 0.5})};
  // analytic payoff at y = 0.9 > b: 0.1 + 0.5 * 0.9 * 0.5 = 0.325 < v = 0.5
  const SimStats dev = simulate_deviation(s, 0.9, 100000, 13);
  CHECK(dev.mean_payoff < s.eq.v - 3.0 * dev.std_error);
  CHECK(std::abs(dev.mean_payoff - 0.325) <= 3.0 * dev.std_error);
}
