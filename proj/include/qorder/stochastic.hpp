#pragma once

// Realized walks of MC0 and MC1 (MC0 from 1/1 is the symmetric walk on the
// permuted SB tree), exact cylinder probabilities and the statistical
// experiments built on them.

#include "qorder/exact_core.hpp"
#include "qorder/observable.hpp"
#include "qorder/operators.hpp"
#include "qorder/parallel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qorder {

inline constexpr std::uint64_t kMaxHorizon = std::uint64_t{1} << 20;
inline constexpr std::size_t kMaxCylinder = 1024;
inline constexpr std::uint64_t kDefaultSeed = 0x5EED5EEDull;

using Word = std::vector<int>;  // letters 0 / 1

Word parse_word(std::string_view text);
std::string word_str(const Word& w);

// prod_k p(i_k, Phi_{i_(k-1)} ... Phi_{i_1}(x)).
Rational cylinder_prob(MarkovKind kind, const ExtRat& x, const Word& word);

struct ChainSpec {
  MarkovKind kind = MarkovKind::MC0;
  ExtRat start = ExtRat(1, 1);
  std::uint64_t horizon = 1;
  std::uint64_t seed = kDefaultSeed;
};

struct WalkPath {
  std::vector<ExtRat> states;  // states[0] = start
  Word letters;
  Rational probability;  // cylinder probability of the letters from start
};

// Walk number `walk` of the chain; letter k is drawn with exact probability
// p(1, states[k-1]).
WalkPath simulate(const ChainSpec& spec, std::uint64_t walk = 0);

// Path with prescribed letters.
WalkPath follow(MarkovKind kind, const ExtRat& start, const Word& letters);

struct Interval {
  ExtRat lo;
  ExtRat hi;  // open interval (lo, hi)

  bool contains(const ExtRat& x) const { return lo < x && x < hi; }
};

struct WalkSummary {
  std::int64_t hit_time = -1;  // first t >= 0 with W_t in the interval
  ExtRat final_state;
};

// Many walks, each summarised by its hitting time and final state.
std::vector<WalkSummary> simulate_many(const ChainSpec& spec, std::uint64_t walks,
                                       const std::optional<Interval>& interval, const Exec& exec = {});

// Walks first_walk, ..., first_walk + walks - 1; consecutive ranges concatenate
// to the longer run.
std::vector<WalkSummary> simulate_range(const ChainSpec& spec, std::uint64_t first_walk, std::uint64_t walks,
                                        const std::optional<Interval>& interval, const Exec& exec = {});

struct HittingResult {
  double fraction = 0.0;
  std::vector<double> curve;  // curve[h]: fraction hit at time <= h, h = 0..horizon
  std::vector<std::int64_t> hit_times;
};

// MC0 from 1/1. Walks stop at their first hit.
HittingResult hitting_experiment(const Interval& interval, std::uint64_t walks, std::uint64_t horizon,
                                 std::uint64_t seed, const Exec& exec = {});

struct MartingaleReport {
  double max_deviation = 0.0;  // largest |mean h(W_{n+1}) - h(W_n)| over matched prefixes
  double std_error = 0.0;      // standard error at that prefix
  std::uint64_t prefixes = 0;  // matched prefix classes examined
  bool one_step_exact = true;  // (Ph)(W_n) = h(W_n) along every path (exact h only)
  double window_fraction = 0.0;  // walks with both letters in every window of 64
  bool no_atoms = true;  // every path probability <= the largest constant-tail cylinder
};

MartingaleReport martingale_check(MarkovKind kind, const Observable& h, const ExtRat& start, std::uint64_t walks,
                                  std::uint64_t horizon, std::uint64_t seed, const Exec& exec = {});

struct MonteCarlo {
  Complex mean;
  double std_error = 0.0;  // of the real part
};

// Estimate of E_x[f(W_n)].
MonteCarlo monte_carlo_expectation(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n,
                                   std::uint64_t walks, std::uint64_t seed, const Exec& exec = {});

struct LimitExperiment {
  Complex value;      // markov_power(MC0, f, x, n)
  Complex reference;  // stieltjes_mean(f, n)

  double gap() const { return std::abs(value - reference); }
};

LimitExperiment mc0_limit_experiment(const Observable& f, const ExtRat& x, unsigned n, const Exec& exec = {});

}  // namespace qorder
