#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "duel/sampling.hpp"

namespace duel {

inline constexpr double kMissScore = -1.0;

// Outcome of one shot. A miss scores -1 and sorts below every hit; hits are
// ordered by firing distance. Ties are exact floating-point equality, which
// is the right notion here: identical hit distances share the prize.
struct Score {
  double value = kMissScore;

  static Score miss() { return {}; }
  static Score hit(double y) {
    if (!(y >= 0.0 && y < 1.0))
      throw std::domain_error("Score::hit: distance must lie in [0, 1)");
    return Score{y};
  }
  bool is_hit() const { return value >= 0.0; }

  friend auto operator<=>(const Score&, const Score&) = default;
};

struct RoundOutcome {
  std::vector<double> distances;
  std::vector<bool> hits;
  std::vector<Score> scores;
  std::vector<double> payoffs;
};

struct SimStats {
  std::int64_t rounds = 0;
  std::uint64_t seed = 0;
  double mean_payoff = 0.0;  // mean per-round payoff of the tracked player
  double std_error = 0.0;    // sample standard deviation / sqrt(rounds)
  double all_miss_freq = 0.0;
  std::optional<double> deviation_distance;  // set when player 0 fired a
                                             // fixed pure strategy
  bool degenerate_stats = false;  // rounds == 1: std_error reported as 0
};

// Prize split: the k players attaining the maximal hit distance get 1/k
// each, everyone else 0; if all miss, every player gets c. Throws
// std::domain_error on an empty score list. Permutation-equivariant.
std::vector<double> allocate_payoffs(std::span<const Score> scores, double c);

// Generator driving round `round_index` of simulate(strategy, rounds, seed).
// Within a round, player i consumes two draws in index order: the distance
// draw, then the hit draw. A fixed-distance player still consumes (and
// ignores) its distance draw, so equilibrium and deviation runs read
// identical streams for the remaining players.
inline SplitMix64 round_rng(std::uint64_t seed, std::uint64_t round_index) {
  return SplitMix64(substream_key(seed, round_index));
}

// One simulated round. Every player samples a firing distance from the
// strategy (player 0 uses fixed_player0 instead when set), hits with
// probability 1 - distance, and payoffs are allocated as above.
RoundOutcome play_round(const FiringStrategy& strategy, SplitMix64& rng,
                        std::optional<double> fixed_player0 = std::nullopt);

// Monte Carlo estimate of the per-player equilibrium payoff: tracks player
// 0's payoff (all players are exchangeable) over `rounds` independent
// rounds. The result is a pure function of (strategy, rounds, seed); the
// thread count only affects wall time. Throws std::domain_error for
// rounds < 1 or threads < 1.
SimStats simulate(const FiringStrategy& strategy, std::int64_t rounds,
                  std::uint64_t seed, int threads = 1);

// Same, but player 0 always fires at y_dev in [0, 1) while everyone else
// plays the equilibrium strategy. Tracks the deviator's payoff.
SimStats simulate_deviation(const FiringStrategy& strategy, double y_dev,
                            std::int64_t rounds, std::uint64_t seed,
                            int threads = 1);

}  // namespace duel
