#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms; only its value types are shared.

#include "qorder/exact_core.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using qorder::ExtRat;
using qorder::Integer;
using qorder::Rational;

// Euclid on machine integers.
inline std::vector<long> euclid(long p, long q) {
  std::vector<long> a;
  while (q != 0) {
    a.push_back(p / q);
    const long r = p % q;
    p = q;
    q = r;
  }
  return a;
}

inline Rational eval_cf(const std::vector<long>& a) {
  Rational x(a.back());
  for (std::size_t i = a.size() - 1; i-- > 0;) x = a[i] + 1 / x;
  return x;
}

// Number of ways to write n as sum of powers of two, each used at most twice.
inline std::uint64_t hyperbinary_bruteforce(std::uint64_t n, std::uint64_t power = 1) {
  if (n == 0) return 1;
  if (power > n) return 0;
  std::uint64_t count = 0;
  for (std::uint64_t use = 0; use <= 2 && use * power <= n; ++use) {
    const std::uint64_t rest = n - use * power;
    // Lower powers are exhausted: the remainder must be divisible by 2*power.
    if (rest % (2 * power) != 0) continue;
    count += hyperbinary_bruteforce(rest, 2 * power);
  }
  return count;
}

// All reduced p/q > 0 whose partial quotients sum to k, sorted.
inline std::vector<ExtRat> sb_level_bruteforce(unsigned k) {
  std::vector<std::pair<Rational, ExtRat>> found;
  const long bound = 1L << k;  // Fibonacci growth stays far below 2^k
  for (long q = 1; q <= bound; ++q) {
    for (long p = 1; p <= bound; ++p) {
      if (std::gcd(p, q) != 1) continue;
      long sum = 0;
      for (auto a : euclid(p, q)) sum += a;
      if (sum == static_cast<long>(k)) found.emplace_back(Rational(p, q), ExtRat(p, q));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ExtRat> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

// ? by bisection of the Farey interval, halving the dyadic interval along.
inline Rational qmark_bisection(const ExtRat& x) {
  ExtRat lo(0, 1), hi(1, 1);
  Rational vlo(0), vhi(1);
  if (x == lo) return vlo;
  if (x == hi) return vhi;
  for (;;) {
    const ExtRat m(lo.num() + hi.num(), lo.den() + hi.den());
    const Rational vm = (vlo + vhi) / 2;
    if (x == m) return vm;
    if (x < m) {
      hi = m;
      vhi = vm;
    } else {
      lo = m;
      vlo = vm;
    }
  }
}

// rho by bisection of the Stern-Brocot interval (0, inf).
inline Rational rho_bisection(const ExtRat& x) {
  ExtRat lo(0, 1), hi = ExtRat::infinity();
  Rational vlo(0), vhi(1);
  if (x == lo) return vlo;
  if (x == hi) return vhi;
  for (;;) {
    const ExtRat m(lo.num() + hi.num(), lo.den() + hi.den());
    const Rational vm = (vlo + vhi) / 2;
    if (x == m) return vm;
    if (x < m) {
      hi = m;
      vhi = vm;
    } else {
      lo = m;
      vlo = vm;
    }
  }
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  // Positive rational with num, den in [1, 2^bits], reduced.
  ExtRat positive(unsigned bits = 20) {
    const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    Integer p(std::to_string((rng_() & mask) + 1)), q(std::to_string((rng_() & mask) + 1));
    return ExtRat(p, q);
  }

  // Rational in (0, 1).
  ExtRat unit(unsigned bits = 20) {
    for (;;) {
      const ExtRat x = positive(bits);
      if (x < ExtRat(1, 1)) return x;
      if (ExtRat(1, 1) < x) return qorder::reciprocal(x);
    }
  }

  // Rational with a random continued fraction of modest depth.
  ExtRat by_cf(unsigned max_terms = 8, unsigned max_quotient = 6) {
    std::vector<long> a{static_cast<long>(below(max_quotient + 1))};
    const unsigned n = static_cast<unsigned>(below(max_terms));
    for (unsigned i = 0; i < n; ++i) a.push_back(static_cast<long>(range(1, max_quotient)));
    if (a.size() == 1 && a[0] == 0) a[0] = 1;
    return ExtRat::from_rational(eval_cf(a));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
