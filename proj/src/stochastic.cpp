#include "qorder/stochastic.hpp"

#include "qorder/minkowski.hpp"
#include "qorder/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qorder {

namespace {

constexpr std::int64_t kWalksPerChunk = 256;
constexpr unsigned kPrefixClasses = 6;  // matched prefixes of length 0..6
constexpr std::size_t kWindow = 64;

void check_horizon(std::uint64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (horizon > kMaxHorizon)
    throw std::out_of_range("horizon " + std::to_string(horizon) + " exceeds the cap 2^20");
}

std::int64_t chunk_count(std::uint64_t walks) {
  return static_cast<std::int64_t>((walks + kWalksPerChunk - 1) / kWalksPerChunk);
}

// Returns 1 with probability a/b, 0 < a < b, by comparing a uniform U
// bit by bit with the binary expansion of a/b.
int bernoulli(Integer a, const Integer& b, BitStream& bits) {
  for (;;) {
    a *= 2;
    int digit = 0;
    if (a >= b) {
      digit = 1;
      a -= b;
    }
    const int u = bits.bit();
    if (u < digit) return 1;
    if (u > digit) return 0;
  }
}

// One step of the chain from (p, q): draws the letter and updates in place.
int step(MarkovKind kind, Integer& p, Integer& q, BitStream& bits) {
  int letter;
  if (kind == MarkovKind::MC0) {
    letter = bits.bit();
  } else if (sgn(p) == 0) {
    letter = 0;
  } else if (sgn(q) == 0) {
    letter = 1;
  } else {
    letter = bernoulli(p, p + q, bits);
  }
  if (sgn(q) == 0) {
    if (letter == 0) p = q = 1;
  } else if (letter == 0) {
    q += p;
  } else {
    p += q;
  }
  return letter;
}

// For MC1 the cylinder product telescopes: each factor is q/q' or p/p'
// while the other coordinate is unchanged, so the probability of reaching
// p_n/q_n from interior p_0/q_0 is p_0 q_0 / (p_n q_n).
Rational path_probability(MarkovKind kind, const ExtRat& start, const ExtRat& end, std::size_t n) {
  if (kind == MarkovKind::MC0) {
    Rational r(1);
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), n);
    return r;
  }
  if (start.is_zero() || start.is_infinite()) return Rational(1);
  Rational r(start.num() * start.den(), end.num() * end.den());
  r.canonicalize();
  return r;
}

}  // namespace

Word parse_word(std::string_view text) {
  Word w;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("letters must be 0 or 1: '" + std::string(text) + "'");
    w.push_back(c - '0');
  }
  return w;
}

std::string word_str(const Word& w) {
  std::string s;
  for (int b : w) s.push_back(static_cast<char>('0' + b));
  return s;
}

Rational cylinder_prob(MarkovKind kind, const ExtRat& x, const Word& word) {
  if (word.size() > kMaxCylinder) throw std::out_of_range("cylinder length exceeds the cap 2^10");
  Rational prob(1);
  ExtRat state = x;
  for (int s : word) {
    const auto probs = transition_probs(kind, state);
    prob *= s == 0 ? probs.first : probs.second;
    if (sgn(prob) == 0) return prob;
    state = branch(s, state);
  }
  return prob;
}

WalkPath follow(MarkovKind kind, const ExtRat& start, const Word& letters) {
  WalkPath path;
  path.states.push_back(start);
  path.letters = letters;
  path.probability = cylinder_prob(kind, start, letters);
  for (int s : letters) path.states.push_back(branch(s, path.states.back()));
  return path;
}

WalkPath simulate(const ChainSpec& spec, std::uint64_t walk) {
  check_horizon(spec.horizon);
  BitStream bits(spec.seed, walk);
  Integer p = spec.start.num(), q = spec.start.den();
  WalkPath path;
  path.states.reserve(spec.horizon + 1);
  path.letters.reserve(spec.horizon);
  path.states.push_back(spec.start);
  for (std::uint64_t t = 0; t < spec.horizon; ++t) {
    path.letters.push_back(step(spec.kind, p, q, bits));
    path.states.push_back(ExtRat::coprime(p, q));
  }
  path.probability = path_probability(spec.kind, spec.start, path.states.back(), spec.horizon);
  return path;
}

namespace {

WalkSummary run_walk(const ChainSpec& spec, std::uint64_t walk, const std::optional<Interval>& interval,
                     bool stop_at_hit) {
  BitStream bits(spec.seed, walk);
  Integer p = spec.start.num(), q = spec.start.den();
  WalkSummary s;
  if (interval && interval->contains(spec.start)) s.hit_time = 0;
  for (std::uint64_t t = 1; t <= spec.horizon; ++t) {
    if (stop_at_hit && s.hit_time >= 0) break;
    step(spec.kind, p, q, bits);
    if (interval && s.hit_time < 0 && interval->contains(ExtRat::coprime(p, q))) s.hit_time = static_cast<std::int64_t>(t);
  }
  s.final_state = ExtRat::coprime(p, q);
  return s;
}

void check_walks(std::uint64_t walks) {
  if (walks < 1) throw std::invalid_argument("at least one walk is needed");
  if (walks > 1'000'000) throw std::out_of_range("walk count " + std::to_string(walks) + " exceeds the cap 10^6");
}

}  // namespace

std::vector<WalkSummary> simulate_many(const ChainSpec& spec, std::uint64_t walks,
                                       const std::optional<Interval>& interval, const Exec& exec) {
  return simulate_range(spec, 0, walks, interval, exec);
}

std::vector<WalkSummary> simulate_range(const ChainSpec& spec, std::uint64_t first_walk, std::uint64_t walks,
                                        const std::optional<Interval>& interval, const Exec& exec) {
  check_horizon(spec.horizon);
  check_walks(walks);
  const auto chunks = map_chunks<std::vector<WalkSummary>>(exec, chunk_count(walks), [&](std::int64_t c) {
    std::vector<WalkSummary> out;
    const std::uint64_t first = first_walk + static_cast<std::uint64_t>(c) * kWalksPerChunk;
    const std::uint64_t last = std::min<std::uint64_t>(first_walk + walks, first + kWalksPerChunk);
    for (std::uint64_t w = first; w < last; ++w) out.push_back(run_walk(spec, w, interval, false));
    return out;
  });
  std::vector<WalkSummary> all;
  all.reserve(walks);
  for (const auto& chunk : chunks) all.insert(all.end(), chunk.begin(), chunk.end());
  return all;
}

HittingResult hitting_experiment(const Interval& interval, std::uint64_t walks, std::uint64_t horizon,
                                 std::uint64_t seed, const Exec& exec) {
  if (!(interval.lo < interval.hi))
    throw std::invalid_argument("empty interval (" + interval.lo.str() + ", " + interval.hi.str() + ")");
  check_horizon(horizon);
  check_walks(walks);
  const ChainSpec spec{MarkovKind::MC0, ExtRat(1, 1), horizon, seed};
  const auto chunks = map_chunks<std::vector<std::int64_t>>(exec, chunk_count(walks), [&](std::int64_t c) {
    std::vector<std::int64_t> out;
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kWalksPerChunk;
    const std::uint64_t last = std::min<std::uint64_t>(walks, first + kWalksPerChunk);
    for (std::uint64_t w = first; w < last; ++w) out.push_back(run_walk(spec, w, interval, true).hit_time);
    return out;
  });
  HittingResult r;
  for (const auto& chunk : chunks) r.hit_times.insert(r.hit_times.end(), chunk.begin(), chunk.end());
  std::vector<std::uint64_t> first_hits(horizon + 1, 0);
  for (auto t : r.hit_times)
    if (t >= 0) ++first_hits[static_cast<std::size_t>(t)];
  std::uint64_t cumulative = 0;
  r.curve.reserve(horizon + 1);
  for (auto n : first_hits) {
    cumulative += n;
    r.curve.push_back(static_cast<double>(cumulative) / static_cast<double>(walks));
  }
  r.fraction = r.curve.back();
  return r;
}

namespace {

struct WalkRecord {
  std::uint64_t prefix = 0;              // first kPrefixClasses letters, first letter highest
  std::vector<double> h_values;          // h(W_0), ..., h(W_{kPrefixClasses + 1})
  bool one_step_exact = true;
  bool windows_ok = true;
  bool no_atom = true;
};

bool windows_have_both(const Word& letters) {
  if (letters.size() < kWindow) return true;
  // Longest constant run must be shorter than the window.
  std::size_t run = 1;
  for (std::size_t i = 1; i < letters.size(); ++i) {
    run = letters[i] == letters[i - 1] ? run + 1 : 1;
    if (run >= kWindow) return false;
  }
  return true;
}

}  // namespace

MartingaleReport martingale_check(MarkovKind kind, const Observable& h, const ExtRat& start, std::uint64_t walks,
                                  std::uint64_t horizon, std::uint64_t seed, const Exec& exec) {
  check_horizon(horizon);
  check_walks(walks);
  const ChainSpec spec{kind, start, horizon, seed};
  const unsigned tracked = static_cast<unsigned>(std::min<std::uint64_t>(horizon - 1, kPrefixClasses));
  const auto chunks = map_chunks<std::vector<WalkRecord>>(exec, chunk_count(walks), [&](std::int64_t c) {
    std::vector<WalkRecord> out;
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kWalksPerChunk;
    const std::uint64_t last = std::min<std::uint64_t>(walks, first + kWalksPerChunk);
    for (std::uint64_t w = first; w < last; ++w) {
      const WalkPath path = simulate(spec, w);
      WalkRecord rec;
      for (unsigned k = 0; k < tracked; ++k) rec.prefix = rec.prefix << 1 | static_cast<std::uint64_t>(path.letters[k]);
      for (unsigned k = 0; k <= tracked + 1 && k < path.states.size(); ++k) rec.h_values.push_back(h(path.states[k]).real());
      if (h.has_exact()) {
        for (std::uint64_t t = 0; t < horizon && rec.one_step_exact; ++t)
          rec.one_step_exact = markov_apply_exact(kind, h, path.states[t]) == h.exact_at(path.states[t]);
      }
      rec.windows_ok = windows_have_both(path.letters);
      if (kind == MarkovKind::MC1 && !start.is_zero() && !start.is_infinite()) {
        const Rational x = start.to_rational();
        const Rational n(static_cast<unsigned long>(horizon));
        const Rational bound = std::max<Rational>(x / (x + n), 1 / (1 + n * x));
        rec.no_atom = path.probability <= bound;
      }
      out.push_back(std::move(rec));
    }
    return out;
  });

  MartingaleReport report;
  std::uint64_t windows_ok = 0;
  // (prefix length, prefix) -> sums of h(W_{n+1}) and squares, count, h(W_n).
  struct Cell {
    CompensatedSum sum, sum_sq;
    std::uint64_t count = 0;
    double current = 0.0;
  };
  std::map<std::pair<unsigned, std::uint64_t>, Cell> cells;
  for (const auto& chunk : chunks) {
    for (const auto& rec : chunk) {
      report.one_step_exact = report.one_step_exact && rec.one_step_exact;
      report.no_atoms = report.no_atoms && rec.no_atom;
      windows_ok += rec.windows_ok;
      for (unsigned n = 0; n <= tracked && n + 1 < rec.h_values.size(); ++n) {
        const std::uint64_t key = tracked == 0 ? 0 : rec.prefix >> (tracked - n);
        Cell& cell = cells[{n, key}];
        const double next = rec.h_values[n + 1];
        cell.sum.add(next);
        cell.sum_sq.add(next * next);
        ++cell.count;
        cell.current = rec.h_values[n];
      }
    }
  }
  for (const auto& [key, cell] : cells) {
    if (cell.count < 30) continue;
    ++report.prefixes;
    const double count = static_cast<double>(cell.count);
    const double mean = cell.sum.value() / count;
    const double var = std::max(0.0, cell.sum_sq.value() / count - mean * mean);
    const double dev = std::abs(mean - cell.current);
    if (dev >= report.max_deviation) {
      report.max_deviation = dev;
      report.std_error = std::sqrt(var / count);
    }
  }
  report.window_fraction = static_cast<double>(windows_ok) / static_cast<double>(walks);
  return report;
}

MonteCarlo monte_carlo_expectation(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n,
                                   std::uint64_t walks, std::uint64_t seed, const Exec& exec) {
  check_walks(walks);
  const ChainSpec spec{kind, x, n, seed};
  struct Partial {
    ComplexSum sum;
    CompensatedSum sum_sq;
  };
  const auto partials = map_chunks<Partial>(exec, chunk_count(walks), [&](std::int64_t c) {
    Partial part;
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kWalksPerChunk;
    const std::uint64_t last = std::min<std::uint64_t>(walks, first + kWalksPerChunk);
    for (std::uint64_t w = first; w < last; ++w) {
      const Complex v = f(run_walk(spec, w, std::nullopt, false).final_state);
      part.sum.add(v);
      part.sum_sq.add(v.real() * v.real());
    }
    return part;
  });
  ComplexSum sum;
  CompensatedSum sum_sq;
  for (const auto& p : partials) {
    sum.add(p.sum);
    sum_sq.add(p.sum_sq);
  }
  const double count = static_cast<double>(walks);
  MonteCarlo mc;
  mc.mean = sum.value() / count;
  const double var = std::max(0.0, sum_sq.value() / count - mc.mean.real() * mc.mean.real());
  mc.std_error = std::sqrt(var / count);
  return mc;
}

LimitExperiment mc0_limit_experiment(const Observable& f, const ExtRat& x, unsigned n, const Exec& exec) {
  if (n > 20) throw std::out_of_range("limit experiment order " + std::to_string(n) + " exceeds the cap 20");
  return {markov_power(MarkovKind::MC0, f, x, n, exec), stieltjes_mean(f, n, TreeKind::SB, exec)};
}

}  // namespace qorder
