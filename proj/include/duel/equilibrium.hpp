#pragma once

#include <stdexcept>

namespace duel {

// n-player silent duel with consolation prize c.
//
// Each of n identical marksmen picks a firing distance x in [0, 1], measured
// as the probability of missing at that range. A shot at x hits with
// probability 1 - x. The player who hits at the greatest distance takes the
// unit prize (split equally on ties); if everyone misses, every player gets c.
// c = 1/n makes the game constant-sum, c = 0 is a winner-take-all prize
// competition.
//
// The symmetric equilibrium is characterized by the overall miss probability
// p, where z = 1/p is the unique root in (1, inf) of
//
//     z^n - n z - (1 - n c) = 0,
//
// the equilibrium payoff v = p^(n-1), and the score distribution
//
//     F(y) = p ((1 - c y) / (1 - y))^(1/(n-1))   on [0, b],
//     b    = (1 - v) / (1 - c v),
//
// with an atom of mass p at the miss score -1. This header solves for
// (p, v, b) and evaluates F, the score density f = F', and the firing
// distance density g(x) = f(x) / (1 - x).

struct GameParams {
  int n = 2;       // number of players, n >= 2
  double c = 0.0;  // consolation prize when everyone misses, 0 <= c < 1
};

// Throws std::domain_error if n < 2 or c is outside [0, 1).
void validate(const GameParams& params);

struct Equilibrium {
  GameParams params;
  double p = 0.0;  // overall miss probability of each player, in (0, 1)
  double v = 0.0;  // equilibrium payoff, p^(n-1)
  double b = 0.0;  // upper endpoint of the score support [0, b], in (0, 1)
};

inline constexpr double kDefaultSolveTol = 1e-12;
inline constexpr int kSolveIterationCap = 200;

// z^n - n z - (1 - n c), the defining polynomial in z = 1/p.
double polynomial_residual(const GameParams& params, double z);

// Miss probability p in (0, 1). z = 1/p is found by bracketed Newton
// iteration (Newton step, bisection fallback when the step leaves the
// bracket) and satisfies |z^n - n z - (1 - n c)| <= tol * max(1, z^n).
// Throws std::domain_error on invalid params or tol <= 0, std::runtime_error
// if the iteration cap is hit. Conditioning degrades as c -> 1; values of
// c above 1 - 1e-6 may fail to converge.
double solve_miss_probability(const GameParams& params,
                              double tol = kDefaultSolveTol);

Equilibrium solve_equilibrium(const GameParams& params,
                              double tol = kDefaultSolveTol);

// Score CDF F on [-1, 1]. F(y) = p for y in [-1, 0) (the miss atom sits at
// -1 and there is no mass in (-1, 0)), the closed form above on [0, b], and
// 1 on (b, 1]. Throws std::domain_error outside [-1, 1].
double score_cdf(const Equilibrium& eq, double y);

// Score density f(y) = F(y) (1 - c) / ((n - 1)(1 - c y)(1 - y)) on [0, b],
// zero elsewhere.
double score_pdf(const Equilibrium& eq, double y);

// Firing distance density g(x) = f(x) / (1 - x) on [0, b], zero elsewhere.
double firing_pdf(const Equilibrium& eq, double x);

}  // namespace duel
