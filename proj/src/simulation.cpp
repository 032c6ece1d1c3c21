#include "duel/simulation.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace duel {

namespace {

struct RoundResult {
  double payoff0 = 0.0;
  bool all_miss = false;
};

// Shared kernel for play_round and the simulate loops. Fills per-player
// distances and hit flags from the round's stream and reports player 0's
// payoff without allocating.
RoundResult run_round(const FiringStrategy& strategy, SplitMix64& rng,
                      const std::optional<double>& fixed_player0,
                      std::vector<double>& distances,
                      std::vector<bool>& hits) {
  const int n = strategy.eq.params.n;
  distances.resize(n);
  hits.resize(n);

  double best = kMissScore;
  int best_count = 0;
  for (int i = 0; i < n; ++i) {
    const double u_dist = rng.uniform();
    const double u_hit = rng.uniform();
    const double x = (i == 0 && fixed_player0) ? *fixed_player0
                                               : firing_quantile(strategy, u_dist);
    const bool hit = u_hit < 1.0 - x;
    distances[i] = x;
    hits[i] = hit;
    const double score = hit ? x : kMissScore;
    if (score > best) {
      best = score;
      best_count = 1;
    } else if (score == best) {
      ++best_count;
    }
  }

  RoundResult r;
  r.all_miss = best == kMissScore;
  const double score0 = hits[0] ? distances[0] : kMissScore;
  if (r.all_miss)
    r.payoff0 = strategy.eq.params.c;
  else
    r.payoff0 = (score0 == best) ? 1.0 / best_count : 0.0;
  return r;
}

struct ChunkAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t all_miss = 0;
};

// Chunk size is part of the reproducibility contract: partial sums are
// accumulated per chunk and combined in chunk order, so the result does not
// depend on how chunks are scheduled across threads.
constexpr std::int64_t kChunkRounds = 8192;

SimStats run_simulation(const FiringStrategy& strategy,
                        const std::optional<double>& fixed_player0,
                        std::int64_t rounds, std::uint64_t seed, int threads) {
  if (rounds < 1) throw std::domain_error("simulate: rounds must be >= 1");
  if (threads < 1) throw std::domain_error("simulate: threads must be >= 1");

  const std::int64_t num_chunks = (rounds + kChunkRounds - 1) / kChunkRounds;
  std::vector<ChunkAccum> chunks(static_cast<std::size_t>(num_chunks));
  std::atomic<std::int64_t> next_chunk{0};

  auto worker = [&] {
    std::vector<double> distances;
    std::vector<bool> hits;
    for (;;) {
      const std::int64_t k = next_chunk.fetch_add(1);
      if (k >= num_chunks) return;
      ChunkAccum acc;
      const std::int64_t first = k * kChunkRounds;
      const std::int64_t last = std::min(rounds, first + kChunkRounds);
      for (std::int64_t r = first; r < last; ++r) {
        SplitMix64 rng = round_rng(seed, static_cast<std::uint64_t>(r));
        const RoundResult res =
            run_round(strategy, rng, fixed_player0, distances, hits);
        acc.sum += res.payoff0;
        acc.sum_sq += res.payoff0 * res.payoff0;
        acc.all_miss += res.all_miss ? 1 : 0;
      }
      chunks[static_cast<std::size_t>(k)] = acc;
    }
  };

  const int spawned = static_cast<int>(
      std::min<std::int64_t>(threads, num_chunks)) - 1;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(spawned));
  for (int t = 0; t < spawned; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ChunkAccum total;
  for (const ChunkAccum& acc : chunks) {  // fixed reduction order
    total.sum += acc.sum;
    total.sum_sq += acc.sum_sq;
    total.all_miss += acc.all_miss;
  }

  SimStats stats;
  stats.rounds = rounds;
  stats.seed = seed;
  stats.mean_payoff = total.sum / static_cast<double>(rounds);
  stats.all_miss_freq =
      static_cast<double>(total.all_miss) / static_cast<double>(rounds);
  stats.deviation_distance = fixed_player0;
  if (rounds == 1) {
    stats.std_error = 0.0;
    stats.degenerate_stats = true;
  } else {
    const double r = static_cast<double>(rounds);
    const double var = std::max(
        0.0, (total.sum_sq - r * stats.mean_payoff * stats.mean_payoff) /
                 (r - 1.0));
    stats.std_error = std::sqrt(var / r);
  }
  return stats;
}

}  // namespace

std::vector<double> allocate_payoffs(std::span<const Score> scores, double c) {
  if (scores.empty())
    throw std::domain_error("allocate_payoffs: empty score list");

  Score best = Score::miss();
  int best_count = 0;
  for (const Score& s : scores) {
    if (s > best) {
      best = s;
      best_count = 1;
    } else if (s == best) {
      ++best_count;
    }
  }

  std::vector<double> payoffs(scores.size(), 0.0);
  if (!best.is_hit()) {
    for (double& pay : payoffs) pay = c;
    return payoffs;
  }
  // Note: best_count counts misses too when all scores are Miss, but that
  // branch returned above, so here best is a hit and ties share 1/k.
  const double share = 1.0 / best_count;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] == best) payoffs[i] = share;
  return payoffs;
}

RoundOutcome play_round(const FiringStrategy& strategy, SplitMix64& rng,
                        std::optional<double> fixed_player0) {
  if (fixed_player0 && !(*fixed_player0 >= 0.0 && *fixed_player0 < 1.0))
    throw std::domain_error("play_round: fixed distance must lie in [0, 1)");

  RoundOutcome out;
  run_round(strategy, rng, fixed_player0, out.distances, out.hits);
  out.scores.reserve(out.distances.size());
  for (std::size_t i = 0; i < out.distances.size(); ++i)
    out.scores.push_back(out.hits[i] ? Score::hit(out.distances[i])
                                     : Score::miss());
  out.payoffs = allocate_payoffs(out.scores, strategy.eq.params.c);
  return out;
}

SimStats simulate(const FiringStrategy& strategy, std::int64_t rounds,
                  std::uint64_t seed, int threads) {
  return run_simulation(strategy, std::nullopt, rounds, seed, threads);
}

SimStats simulate_deviation(const FiringStrategy& strategy, double y_dev,
                            std::int64_t rounds, std::uint64_t seed,
                            int threads) {
  if (!(y_dev >= 0.0 && y_dev < 1.0))
    throw std::domain_error("simulate_deviation: y must lie in [0, 1)");
  return run_simulation(strategy, y_dev, rounds, seed, threads);
}

}  // namespace duel
