#include "qorder/verify.hpp"

#include "qorder/exact_core.hpp"
#include "qorder/interval_maps.hpp"
#include "qorder/lr_coding.hpp"
#include "qorder/minkowski.hpp"
#include "qorder/operators.hpp"
#include "qorder/stochastic.hpp"
#include "qorder/tree_gen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qorder {

namespace {

// Per-check generator: the suite seed mixed with the check id, so selecting a
// subset of checks does not change what any single check sees.
class Sampler {
 public:
  Sampler(std::uint64_t seed, const std::string& id) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    rng_.seed(seed ^ h);
  }

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::uint64_t bits(unsigned b) { return b >= 64 ? rng_() : rng_() & ((std::uint64_t{1} << b) - 1); }

  Integer big(unsigned b) {
    Integer z;
    const std::uint64_t v = bits(b);
    mpz_import(z.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return z;
  }

  ExtRat positive(unsigned b) { return ExtRat(big(b) + 1, big(b) + 1); }

  ExtRat unit(unsigned b) {
    for (;;) {
      const ExtRat x = positive(b);
      if (x < ExtRat(1, 1)) return x;
      if (ExtRat(1, 1) < x) return reciprocal(x);
    }
  }

  ExtRat by_cf(unsigned max_terms, unsigned max_quotient) {
    ContFrac c;
    c.terms.emplace_back(static_cast<unsigned long>(below(max_quotient + 1)));
    const auto n = below(max_terms);
    for (std::uint64_t i = 0; i < n; ++i) c.terms.emplace_back(static_cast<unsigned long>(range(1, max_quotient)));
    if (c.terms.size() == 1 && c.terms[0] == 0) c.terms[0] = 1;
    return rat_from_cf(c);
  }

  // Point of J with both ancestors in the mix.
  ExtRat point_of_J(unsigned b) {
    switch (below(25)) {
      case 0: return ExtRat(0, 1);
      case 1: return ExtRat::infinity();
      default: return positive(b);
    }
  }

 private:
  std::mt19937_64 rng_;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

CheckOutcome ok(std::string detail) { return {true, std::move(detail)}; }
CheckOutcome fail(std::string detail) { return {false, std::move(detail)}; }

// Counts cases; the first failing case is kept for the report.
class Tally {
 public:
  void expect(bool good, const std::string& what) {
    ++cases_;
    if (!good && first_failure_.empty()) first_failure_ = what;
  }
  template <typename Describe>
  void expect_lazy(bool good, Describe describe) {
    ++cases_;
    if (!good && first_failure_.empty()) first_failure_ = describe();
  }
  CheckOutcome outcome(const std::string& unit = "cases") const {
    if (first_failure_.empty()) return ok(std::to_string(cases_) + " " + unit);
    return fail("first failure: " + first_failure_);
  }

 private:
  std::uint64_t cases_ = 0;
  std::string first_failure_;
};

void each_level(TreeSpec spec, unsigned max_k, const std::function<void(unsigned, const ExtRat&)>& visit) {
  for (unsigned k = 1; k <= max_k; ++k)
    for_each_in_level(spec, k, [&](std::uint64_t, const ExtRat& x) { visit(k, x); });
}

constexpr TreeSpec kSB{TreeKind::SB, false};
constexpr TreeSpec kSBhat{TreeKind::SB, true};
constexpr TreeSpec kFarey{TreeKind::Farey, false};
constexpr TreeSpec kFhat{TreeKind::Farey, true};
constexpr TreeSpec kDyadic{TreeKind::Dyadic, false};
constexpr TreeSpec kDhat{TreeKind::Dyadic, true};

const Dyadic kOne(Integer(1), 0);

// ---------------------------------------------------------------- exact-core

void canonical_expansions(long remaining, ContFrac& prefix, const std::function<void(const ContFrac&)>& visit) {
  if (remaining == 0) {
    if (prefix.is_canonical() && !(prefix.terms.size() == 1 && prefix.terms[0] == 0)) visit(prefix);
    return;
  }
  for (long a = 1; a <= remaining; ++a) {
    prefix.terms.emplace_back(a);
    canonical_expansions(remaining - a, prefix, visit);
    prefix.terms.pop_back();
  }
}

CheckOutcome cf_roundtrip(const VerifyOptions&) {
  Tally t;
  std::uint64_t count = 0;
  for (long total = 1; total <= 14; ++total) {
    for (long a0 = 0; a0 <= total; ++a0) {
      ContFrac prefix;
      prefix.terms.emplace_back(a0);
      canonical_expansions(total - a0, prefix, [&](const ContFrac& c) {
        ++count;
        t.expect_lazy(cf_from_rat(rat_from_cf(c)) == c, [&] { return c.str(); });
      });
    }
  }
  t.expect(count == (1u << 14) - 1, "expansion count " + std::to_string(count));
  return t.outcome("expansions");
}

CheckOutcome depth_levels(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned k, const ExtRat& x) {
    t.expect_lazy(depth(x) == k, [&] { return x.str(); });
  });
  return t.outcome("tree entries");
}

CheckOutcome depth_identity(const VerifyOptions& o) {
  Sampler s(o.seed, "exact-core/depth-identity");
  Tally t;
  int integers = 0;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = i % 100 == 0 ? ExtRat(s.big(20) + 1, 1) : s.positive(63);
    if (x.is_integer()) {
      // Integers sit at depth floor(x); the identity is stated for the rest.
      ++integers;
      t.expect_lazy(depth(x) == x.num(), [&] { return x.str(); });
      continue;
    }
    t.expect_lazy(depth(x) == floor_of(x) + rank(frac_of(x)) + 1, [&] { return x.str(); });
  }
  auto out = t.outcome("points");
  out.detail += " (" + std::to_string(integers) + " integers checked as depth(n) = n)";
  return out;
}

CheckOutcome phi_mediant(const VerifyOptions& o) {
  Sampler s(o.seed, "exact-core/phi-mediant");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = s.by_cf(10, 40);
    const Parents p = parents(x);
    t.expect_lazy(cross(p.left, p.right) == 1 && phi(mediant(p.left, p.right)) == mediant(phi(p.left), phi(p.right)),
                  [&] { return p.left.str() + ", " + p.right.str(); });
  }
  return t.outcome("unimodular pairs");
}

CheckOutcome complement_involution(const VerifyOptions& o) {
  Sampler s(o.seed, "exact-core/complement-involution");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = s.unit(40);
    const ContFrac c = cf_from_rat(x);
    const ContFrac d = complement_cf(c);
    t.expect_lazy(complement_cf(d) == c && rat_from_cf(d).to_rational() == 1 - x.to_rational(),
                  [&] { return x.str(); });
  }
  return t.outcome("points");
}

// ---------------------------------------------------------------- lr-coding

CheckOutcome det_one(const VerifyOptions& o) {
  Sampler s(o.seed, "lr-coding/det-one");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    LRWord w;
    const auto n = s.below(17);
    for (std::uint64_t k = 0; k < n; ++k) w.letters.push_back(s.below(2) ? Letter::R : Letter::L);
    t.expect_lazy(matrix_from_word(w).det() == 1, [&] { return w.str(); });
  }
  return t.outcome("words");
}

CheckOutcome word_roundtrip(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned k, const ExtRat& x) {
    const LRWord w = word_from_cf(cf_from_rat(x));
    t.expect_lazy(w.size() == k - 1 && rat_from_matrix(matrix_from_word(w)) == x, [&] { return x.str(); });
  });
  return t.outcome("tree entries");
}

CheckOutcome hat_involution(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned, const ExtRat& x) {
    const ExtRat y = hat(x);
    t.expect_lazy(hat(y) == x && depth(y) == depth(x), [&] { return x.str(); });
  });
  return t.outcome("tree entries");
}

CheckOutcome neighbor_unimodular(const VerifyOptions&) {
  // Neighbours in the sorted union of levels 1..k with the ancestors.
  Tally t;
  std::vector<ExtRat> all{ExtRat(0, 1), ExtRat::infinity()};
  for (unsigned k = 1; k <= 12; ++k) {
    const auto row = level(kSB, k);
    all.insert(all.end(), row.begin(), row.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
      t.expect_lazy(cross(all[i], all[i + 1]) == 1, [&] { return all[i].str() + ", " + all[i + 1].str(); });
  }
  return t.outcome("neighbour pairs");
}

CheckOutcome pi_prefix(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned k, const ExtRat& x) {
    const InfiniteCode c = pi_code(x);
    LRWord head;
    head.letters.assign(c.prefix.letters.begin(), c.prefix.letters.begin() + (k - 1));
    t.expect_lazy(c.prefix.size() >= k - 1 && head == word_from_cf(cf_from_rat(x)) && c.tail != Tail::none,
                  [&] { return x.str(); });
  });
  return t.outcome("tree entries");
}

CheckOutcome code_order(const VerifyOptions& o) {
  Sampler s(o.seed, "lr-coding/code-order");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat a = s.by_cf(8, 6), b = s.below(8) == 0 ? a : s.by_cf(8, 6);
    const CodeOrder expect = a < b ? CodeOrder::less : (b < a ? CodeOrder::greater : CodeOrder::equal);
    t.expect_lazy(code_compare(pi_code(a), pi_code(b)) == expect, [&] { return a.str() + " vs " + b.str(); });
  }
  return t.outcome("pairs");
}

// ---------------------------------------------------------------- tree-gen

CheckOutcome hat_permutation(const VerifyOptions&) {
  Tally t;
  for (unsigned k = 1; k <= 12; ++k) {
    const auto plain = level(kSB, k);
    const auto permuted = level(kSBhat, k);
    for (std::size_t i = 0; i < plain.size(); ++i)
      t.expect_lazy(permuted[i] == hat(plain[i]), [&] { return "level " + std::to_string(k); });
  }
  return t.outcome("entries");
}

std::uint64_t hyperbinary_brute(std::uint64_t n, std::uint64_t power) {
  if (n == 0) return 1;
  if (power > n) return 0;
  std::uint64_t count = 0;
  for (std::uint64_t use = 0; use <= 2 && use * power <= n; ++use)
    if ((n - use * power) % (2 * power) == 0) count += hyperbinary_brute(n - use * power, 2 * power);
  return count;
}

CheckOutcome calkin_wilf(const VerifyOptions&) {
  Tally t;
  const std::uint64_t last = std::uint64_t{1} << 16;
  const auto b = hyperbinary_table(last);
  for (std::uint64_t n = 0; n <= 64; ++n)
    t.expect_lazy(b[n] == hyperbinary_brute(n, 1), [&] { return "b(" + std::to_string(n) + ")"; });
  t.expect(b[8] == 4, "b(8)");
  std::uint64_t i = 2;
  for (unsigned k = 1; i <= last; ++k) {
    for_each_in_level(kSBhat, k, [&](std::uint64_t, const ExtRat& x) {
      if (i > last) return;
      t.expect_lazy(x == ExtRat(Integer(static_cast<unsigned long>(b[i - 2])), Integer(static_cast<unsigned long>(b[i - 1]))),
                    [&] { return "x_" + std::to_string(i); });
      ++i;
    });
  }
  return t.outcome("terms");
}

CheckOutcome denominator_chaining(const VerifyOptions&) {
  Tally t;
  ExtRat prev;
  bool first = true;
  each_level(kSBhat, 12, [&](unsigned, const ExtRat& x) {
    if (!first) t.expect_lazy(prev.den() == x.num(), [&] { return prev.str() + " -> " + x.str(); });
    prev = x;
    first = false;
  });
  return t.outcome("successions");
}

CheckOutcome qmark_image(const VerifyOptions&) {
  Tally t;
  for (unsigned k = 1; k <= 12; ++k) {
    for (const auto& [f, d] : {std::pair{kFarey, kDyadic}, std::pair{kFhat, kDhat}}) {
      const auto farey = level(f, k);
      const auto dyadic = level(d, k);
      for (std::size_t i = 0; i < farey.size(); ++i)
        t.expect_lazy(qmark(farey[i]).to_extrat() == dyadic[i], [&] { return farey[i].str(); });
    }
  }
  return t.outcome("entries");
}

CheckOutcome tree_bijection(const VerifyOptions&) {
  Tally t;
  std::set<std::pair<std::string, std::string>> seen;
  each_level(kSB, 12, [&](unsigned, const ExtRat& x) {
    t.expect_lazy(seen.emplace(x.num().get_str(), x.den().get_str()).second, [&] { return "repeat " + x.str(); });
  });
  // Every fraction of depth <= 12 has numerator and denominator <= F(13) = 233.
  std::uint64_t expected = 0;
  for (long q = 1; q <= 233; ++q)
    for (long p = 1; p <= 233; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const ExtRat x(p, q);
      if (depth(x) > 12) continue;
      ++expected;
      t.expect_lazy(seen.count({x.num().get_str(), x.den().get_str()}) == 1, [&] { return "missing " + x.str(); });
    }
  t.expect(seen.size() == 4095 && expected == 4095, "count " + std::to_string(seen.size()));
  return t.outcome("fractions");
}

// ---------------------------------------------------------------- minkowski

CheckOutcome qmark_symmetry(const VerifyOptions& o) {
  Sampler s(o.seed, "minkowski/qmark-symmetry");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat u = s.below(50) == 0 ? ExtRat(0, 1) : s.unit(15);
    const ExtRat v = ExtRat::from_rational(1 - u.to_rational());
    t.expect_lazy(qmark(u) + qmark(v) == kOne, [&] { return u.str(); });
  }
  return t.outcome("points");
}

CheckOutcome rho_reciprocal(const VerifyOptions& o) {
  Sampler s(o.seed, "minkowski/rho-reciprocal");
  Tally t;
  t.expect(rho(ExtRat(0, 1)) + rho(ExtRat::infinity()) == kOne, "0 and infinity");
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = s.positive(15);
    t.expect_lazy(rho(x) + rho(reciprocal(x)) == kOne, [&] { return x.str(); });
  }
  return t.outcome("points");
}

CheckOutcome mediant_average(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned, const ExtRat& x) {
    const Parents p = parents(x);
    t.expect_lazy((rho(p.left) + rho(p.right)).half() == rho(x), [&] { return x.str(); });
  });
  return t.outcome("unimodular pairs");
}

CheckOutcome qmark_monotone(const VerifyOptions&) {
  Tally t;
  std::vector<ExtRat> all{ExtRat(0, 1), ExtRat(1, 1)};
  for (unsigned k = 1; k <= 12; ++k) {
    const auto row = level(kFarey, k);
    all.insert(all.end(), row.begin(), row.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    t.expect_lazy(qmark(all[i]) < qmark(all[i + 1]), [&] { return all[i].str(); });
  return t.outcome("sorted pairs");
}

CheckOutcome farey_invariance(const VerifyOptions& o) {
  Sampler s(o.seed, "minkowski/farey-invariance");
  auto mass = [](const Rational& a, const Rational& b) {
    auto q = [](const Rational& r) { return qmark(ExtRat::from_rational(r)); };
    return (q(b / (1 + b)) - q(a / (1 + a))) + (q(1 / (2 - b)) - q(1 / (2 - a)));
  };
  Tally t;
  t.expect(mass(Rational(1, 3), Rational(2, 3)) == Dyadic(Integer(1), 1), "desk instance [1/3, 2/3]");
  for (int i = 0; i < 1000; ++i) {
    Rational a = s.below(10) == 0 ? Rational(0) : s.unit(20).to_rational();
    Rational b = s.below(10) == 0 ? Rational(1) : s.unit(20).to_rational();
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    const Dyadic expect = qmark(ExtRat::from_rational(b)) - qmark(ExtRat::from_rational(a));
    t.expect_lazy(mass(a, b) == expect, [&] { return a.get_str() + ", " + b.get_str(); });
  }
  return t.outcome("intervals");
}

CheckOutcome rho_dilation(const VerifyOptions& o) {
  Sampler s(o.seed, "minkowski/rho-dilation");
  Tally t;
  t.expect(rho(ExtRat(2, 5)) == Dyadic(Integer(3), 4) && rho(ExtRat(2, 3)) == Dyadic(Integer(3), 3), "desk 2/5");
  for (int i = 0; i < 10000; ++i) {
    const ExtRat u = s.unit(15);
    const Rational r = u.to_rational();
    t.expect_lazy(rho(u) + rho(u) == rho(ExtRat::from_rational(r / (1 - r))), [&] { return u.str(); });
    const ExtRat x = ExtRat::from_rational(s.positive(15).to_rational() + 1);
    t.expect_lazy(rho(x) + rho(x) == rho(ExtRat::from_rational(x.to_rational() - 1)) + kOne,
                  [&] { return x.str(); });
  }
  return t.outcome("points");
}

CheckOutcome qmark_roundtrip(const VerifyOptions& o) {
  Sampler s(o.seed, "minkowski/roundtrip");
  Tally t;
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = s.positive(15);
    t.expect_lazy(rho(x) == qmark(phi(x)) && rho_inv(rho(x)) == x, [&] { return x.str(); });
    const ExtRat u = s.unit(15);
    t.expect_lazy(qmark_inv(qmark(u)) == u, [&] { return u.str(); });
  }
  return t.outcome("points");
}

CheckOutcome distribution_bound(const VerifyOptions& o) {
  // Counts come from the sorted union of levels 1..k; the library estimate is
  // compared with it at one level per point.
  Sampler s(o.seed, "minkowski/distribution-bound");
  std::vector<ExtRat> xs;
  std::vector<unsigned> probe;
  for (int i = 0; i < 100; ++i) {
    xs.push_back(s.below(10) == 0 ? ExtRat(static_cast<long>(s.range(1, 20)), 1) : s.positive(16));
    probe.push_back(static_cast<unsigned>(s.range(1, 16)));
  }
  Tally t;
  std::vector<ExtRat> sorted;
  for (unsigned k = 1; k <= 16; ++k) {
    auto row = level(kSB, k);
    std::sort(row.begin(), row.end());
    std::vector<ExtRat> merged;
    merged.reserve(sorted.size() + row.size());
    std::merge(sorted.begin(), sorted.end(), row.begin(), row.end(), std::back_inserter(merged));
    sorted = std::move(merged);
    const Rational bound(Rational(1) / (Integer(1) << k));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto count = static_cast<unsigned long>(std::upper_bound(sorted.begin(), sorted.end(), xs[i]) - sorted.begin());
      const Rational est(Rational(count) * bound);
      t.expect_lazy(abs(rho(xs[i]).to_rational() - est) <= bound,
                    [&] { return xs[i].str() + " k=" + std::to_string(k); });
      if (probe[i] == k)
        t.expect_lazy(distribution_estimate(kSB, k, xs[i], o.exec) == est,
                      [&] { return "library count at " + xs[i].str() + " k=" + std::to_string(k); });
    }
  }
  return t.outcome("(x, k) cases");
}

// ---------------------------------------------------------------- interval-maps

ExtRat map_sample(Sampler& s, MapId m) {
  return m == MapId::R ? s.positive(20) : (s.below(50) == 0 ? ExtRat(static_cast<long>(s.below(2)), 1) : s.unit(20));
}

CheckOutcome maps_bijective(const VerifyOptions& o) {
  Sampler s(o.seed, "interval-maps/bijectivity");
  Tally t;
  for (MapId m : {MapId::R, MapId::S, MapId::T})
    for (int i = 0; i < 10000; ++i) {
      const ExtRat x = map_sample(s, m);
      t.expect_lazy(apply_inverse(m, apply(m, x)) == x, [&] { return map_name(m) + " at " + x.str(); });
    }
  return t.outcome("points");
}

CheckOutcome counting_orbits(const VerifyOptions&) {
  Tally t;
  const std::pair<MapId, TreeSpec> cases[] = {{MapId::R, kSBhat}, {MapId::S, kFhat}, {MapId::T, kDhat}};
  for (const auto& [m, spec] : cases) {
    const ExtRat start = m == MapId::R ? ExtRat::infinity() : ExtRat(1, 1);
    const auto o = orbit(m, start, (1u << 12) + 1);
    for (unsigned k = 1; k <= 12; ++k) {
      const auto row = level(spec, k);
      const std::size_t first = (std::size_t{1} << (k - 1)) + 1;
      for (std::size_t i = 0; i < row.size(); ++i)
        t.expect_lazy(o[first + i] == row[i], [&] { return map_name(m) + " index " + std::to_string(first + i); });
    }
  }
  const auto r = orbit(MapId::R, ExtRat::infinity(), (1u << 16) + 1);
  for (long n = 1; n <= 16; ++n) t.expect(r[std::size_t{1} << n] == ExtRat(n, 1), "x_2^" + std::to_string(n));
  return t.outcome("orbit points");
}

CheckOutcome log_diffusion(const VerifyOptions&) {
  Tally t;
  const auto o = orbit(MapId::R, ExtRat::infinity(), (1u << 16) + 1);
  ExtRat running(0, 1);
  for (std::size_t n = 1; n <= (1u << 16); ++n) {
    if (running < o[n]) running = o[n];
    const long lg = static_cast<long>(std::bit_width(n)) - 1;
    t.expect_lazy(running == ExtRat(lg, 1), [&] { return "N=" + std::to_string(n); });
  }
  return t.outcome("prefixes");
}

CheckOutcome conjugacy(const VerifyOptions& o) {
  Tally t;
  auto check = [&](Diagram d, const ExtRat& x) {
    t.expect_lazy(conjugacy_residual(d, x) == 0, [&] { return diagram_name(d) + " at " + x.str(); });
  };
  each_level(kSB, 12, [&](unsigned, const ExtRat& x) { check(Diagram::F_phi_vs_phi_G, x); });
  each_level(kFarey, 12, [&](unsigned, const ExtRat& x) {
    check(Diagram::S_vs_phi_R_phiinv, x);
    check(Diagram::T_qmark_vs_qmark_S, x);
    check(Diagram::D_qmark_vs_qmark_F, x);
  });
  Sampler s(o.seed, "interval-maps/conjugacy");
  for (int i = 0; i < 10000; ++i) {
    check(Diagram::F_phi_vs_phi_G, s.positive(14));
    const ExtRat u = s.unit(14);
    check(Diagram::S_vs_phi_R_phiinv, u);
    check(Diagram::T_qmark_vs_qmark_S, u);
    check(Diagram::D_qmark_vs_qmark_F, u);
  }
  return t.outcome("residuals");
}

CheckOutcome s_cf_action(const VerifyOptions& o) {
  Sampler s(o.seed, "interval-maps/s-cf-action");
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    const ExtRat x = s.unit(24);
    t.expect_lazy(rat_from_cf(s_on_cf(cf_from_rat(x))) == apply(MapId::S, x), [&] { return x.str(); });
  }
  return t.outcome("points");
}

CheckOutcome g_retrace_check(const VerifyOptions&) {
  Tally t;
  each_level(kSB, 12, [&](unsigned k, const ExtRat& x) {
    ExtRat y = x;
    for (unsigned i = 1; i < k; ++i) y = apply(MapId::G, y);
    t.expect_lazy(g_retrace(x) == word_from_cf(cf_from_rat(x)) && y == ExtRat(1, 1), [&] { return x.str(); });
  });
  return t.outcome("tree entries");
}

CheckOutcome indifferent_points(const VerifyOptions&) {
  Tally t;
  t.expect(apply(MapId::F, ExtRat(0, 1)) == ExtRat(0, 1), "F(0)");
  t.expect(apply(MapId::F, ExtRat(1, 1)) == ExtRat(1, 1), "F(1)");
  Rational prev0 = 3, prev1 = 3;
  for (unsigned j = 1; j <= 40; ++j) {
    const Rational h(Rational(1) / (Integer(1) << j));
    const Rational d0(apply(MapId::F, ExtRat::from_rational(h)).to_rational() / h);
    const Rational d1((1 - apply(MapId::F, ExtRat::from_rational(1 - h)).to_rational()) / h);
    t.expect(abs(d0 - 1) < abs(prev0 - 1) && abs(d0 - 1) <= 2 * h, "left quotient j=" + std::to_string(j));
    t.expect(abs(d1 - 1) < abs(prev1 - 1) && abs(d1 - 1) <= 2 * h, "right quotient j=" + std::to_string(j));
    prev0 = d0;
    prev1 = d1;
  }
  return t.outcome("quotients");
}

CheckOutcome eigenfunctions(const VerifyOptions& o) {
  Sampler s(o.seed, "interval-maps/eigenfunctions");
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    const auto m = static_cast<unsigned>(s.range(1, 12));
    const ExtRat dyadic(s.big(16), Integer(1) << 16);
    const ExtRat u = s.unit(12);
    for (const auto& [map, x] : {std::pair{MapId::T, dyadic}, std::pair{MapId::T, u}, std::pair{MapId::S, u}}) {
      const EigenCheck e = eigenfunction_check(m, x, map);
      t.expect_lazy(e.exact_ok && std::abs(e.mapped - e.rotated) < 1e-12,
                    [&] { return map_name(map) + " m=" + std::to_string(m) + " at " + x.str(); });
    }
  }
  return t.outcome("points");
}

// ---------------------------------------------------------------- operators

CheckOutcome transfer_fixed(const VerifyOptions& o) {
  Sampler s(o.seed, "operators/transfer-fixed");
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    const ExtRat x = s.positive(20);
    t.expect_lazy(transfer_apply_exact({Generator::G, 1.0}, observables::reciprocal_fn(), x) == 1 / x.to_rational(),
                  [&] { return "1/x at " + x.str(); });
    t.expect_lazy(lewis_zagier_residual_exact(observables::reciprocal_fn(), 1, x) == 0,
                  [&] { return "three-term at " + x.str(); });
    const ExtRat u = s.unit(20);
    const Rational r = u.to_rational();
    t.expect_lazy(transfer_apply_exact({Generator::Farey, 1.0}, observables::farey_density(), u) == 1 / (r * (1 - r)),
                  [&] { return "Farey density at " + u.str(); });
  }
  return t.outcome("residuals");
}

CheckOutcome mc0_limit(const VerifyOptions& o) {
  const LimitExperiment e = mc0_limit_experiment(observables::inv_square_shift(), ExtRat(1, 1), 20, o.exec);
  if (e.gap() <= 1e-2) return ok(fmt("gap %.3e at n=20", e.gap()));
  return fail(fmt("gap %.3e at n=20", e.gap()));
}

CheckOutcome row_stochastic(const VerifyOptions& o) {
  Sampler s(o.seed, "operators/row-stochastic");
  Tally t;
  const auto one = observables::constant(1);
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = s.point_of_J(20);
    for (MarkovKind k : {MarkovKind::MC0, MarkovKind::MC1})
      t.expect_lazy(markov_apply_exact(k, one, x) == 1, [&] { return markov_name(k) + " at " + x.str(); });
  }
  return t.outcome("rows");
}

CheckOutcome p0_invariance(const VerifyOptions& o) {
  const auto e1 = observables::fourier(1);
  const auto pe1 = markov_observable(MarkovKind::MC0, e1);
  constexpr double C = 4.0;
  Tally t;
  double prev = INFINITY;
  std::string gaps;
  for (unsigned k = 12; k <= 18; ++k) {
    const double gap = std::abs(stieltjes_mean(pe1, k, TreeKind::SB, o.exec) - stieltjes_mean(e1, k, TreeKind::SB, o.exec));
    t.expect(gap <= C * std::ldexp(1.0, -static_cast<int>(k)), "k=" + std::to_string(k) + fmt(" gap %.3e", gap));
    t.expect(gap < prev, "not decreasing at k=" + std::to_string(k));
    prev = gap;
    gaps += fmt(" %.3e", gap);
  }
  auto out = t.outcome("levels");
  if (out.passed) out.detail = "gaps k=12..18:" + gaps + " (C=4)";
  return out;
}

CheckOutcome nu_invariance(const VerifyOptions& o) {
  Sampler s(o.seed, "operators/nu-invariance");
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    ExtRat a = s.positive(10), b = s.positive(10);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    const NuBranchCheck c = nu_branch_check(a, b);
    worst = std::max(worst, c.quadrature_error);
    t.expect_lazy(c.exact_ok && c.quadrature_error < 1e-8, [&] { return a.str() + ", " + b.str(); });
  }
  auto out = t.outcome("intervals");
  if (out.passed) out.detail += fmt(", worst quadrature error %.1e", worst);
  return out;
}

CheckOutcome harmonicity(const VerifyOptions& o) {
  Sampler s(o.seed, "operators/harmonicity");
  Tally t;
  const auto one = observables::constant(1);
  const auto h = observables::h1();
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = i == 0 ? ExtRat(0, 1) : (i == 1 ? ExtRat::infinity() : s.point_of_J(20));
    for (MarkovKind k : {MarkovKind::MC0, MarkovKind::MC1})
      t.expect_lazy(commutator_residual_exact(k, one, x) == 0 && markov_apply_exact(k, one, x) == 1,
                    [&] { return markov_name(k) + " h=1 at " + x.str(); });
    t.expect_lazy(commutator_residual_exact(MarkovKind::MC1, h, x) == 0 &&
                      markov_apply_exact(MarkovKind::MC1, h, x) == h1(x),
                  [&] { return "h1 at " + x.str(); });
  }
  return t.outcome("points");
}

CheckOutcome power_vs_monte_carlo(const VerifyOptions& o) {
  const auto f = observables::inv_square_shift();
  Tally t;
  std::string detail;
  for (MarkovKind k : {MarkovKind::MC0, MarkovKind::MC1}) {
    const ExtRat x(2, 3);
    const MonteCarlo mc = monte_carlo_expectation(k, f, x, 12, 100000, o.seed, o.exec);
    const double exact = markov_power(k, f, x, 12, o.exec).real();
    const double z = std::abs(mc.mean.real() - exact) / mc.std_error;
    t.expect(z <= 3.0, markov_name(k) + fmt(" z=%.2f", z));
    detail += markov_name(k) + fmt(" z=%.2f ", z);
  }
  auto out = t.outcome();
  if (out.passed) out.detail = detail + "(n=12, 1e5 walks)";
  return out;
}

// ---------------------------------------------------------------- stochastic

CheckOutcome cylinder_symmetry(const VerifyOptions& o) {
  Sampler s(o.seed, "stochastic/cylinder-symmetry");
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    const ExtRat x = s.positive(16);
    Word w(s.below(13));
    for (auto& b : w) b = static_cast<int>(s.below(2));
    Word flipped = w;
    for (auto& b : flipped) b = 1 - b;
    t.expect_lazy(cylinder_prob(MarkovKind::MC1, x, w) == cylinder_prob(MarkovKind::MC1, reciprocal(x), flipped),
                  [&] { return x.str() + " " + word_str(w); });
    const auto n = static_cast<long>(s.range(1, 40));
    const Rational r = x.to_rational();
    t.expect_lazy(cylinder_prob(MarkovKind::MC1, x, Word(static_cast<std::size_t>(n), 1)) == r / (r + n),
                  [&] { return "ones from " + x.str(); });
    t.expect_lazy(cylinder_prob(MarkovKind::MC0, x, w) == Rational(1, Integer(1) << static_cast<mp_bitcnt_t>(w.size())),
                  [&] { return "MC0 " + word_str(w); });
  }
  return t.outcome("cases");
}

CheckOutcome letter_frequencies(const VerifyOptions& o) {
  const std::uint64_t walks = 20000;
  Tally t;
  std::string detail;
  for (MarkovKind k : {MarkovKind::MC0, MarkovKind::MC1}) {
    std::uint64_t counts[4] = {0, 0, 0, 0};
    const auto summaries = map_chunks<std::array<std::uint64_t, 4>>(o.exec, 20, [&](std::int64_t c) {
      std::array<std::uint64_t, 4> part{};
      for (std::uint64_t w = static_cast<std::uint64_t>(c) * 1000; w < static_cast<std::uint64_t>(c + 1) * 1000; ++w) {
        const WalkPath p = simulate({k, ExtRat(1, 1), 2, o.seed}, w);
        ++part[static_cast<std::size_t>(p.letters[0] * 2 + p.letters[1])];
      }
      return part;
    });
    for (const auto& part : summaries)
      for (int j = 0; j < 4; ++j) counts[j] += part[static_cast<std::size_t>(j)];
    double worst = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double p = cylinder_prob(k, ExtRat(1, 1), {j >> 1, j & 1}).get_d();
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(walks));
      const double z = std::abs(static_cast<double>(counts[j]) / static_cast<double>(walks) - p) / sigma;
      worst = std::max(worst, z);
    }
    t.expect(worst <= 3.0, markov_name(k) + fmt(" max z=%.2f", worst));
    detail += markov_name(k) + fmt(" max z=%.2f ", worst);
  }
  auto out = t.outcome();
  if (out.passed) out.detail = detail + "(two-letter cylinders from 1, 2e4 walks)";
  return out;
}

CheckOutcome thread_determinism(const VerifyOptions& o) {
  Tally t;
  for (MarkovKind k : {MarkovKind::MC0, MarkovKind::MC1}) {
    const ChainSpec spec{k, ExtRat(3, 2), 256, o.seed};
    const Interval in{ExtRat(2, 5), ExtRat(3, 5)};
    const auto one = simulate_many(spec, 1500, in, Exec{1});
    for (int threads : {2, 8}) {
      const auto many = simulate_many(spec, 1500, in, Exec{threads});
      bool same = many.size() == one.size();
      for (std::size_t i = 0; same && i < one.size(); ++i)
        same = many[i].hit_time == one[i].hit_time && many[i].final_state == one[i].final_state;
      t.expect(same, markov_name(k) + " with " + std::to_string(threads) + " workers");
    }
  }
  return t.outcome("configurations");
}

CheckOutcome hitting_curve(const VerifyOptions& o) {
  const auto r = hitting_experiment({ExtRat(2, 5), ExtRat(3, 5)}, 10000, 1000, o.seed, o.exec);
  Tally t;
  t.expect(r.fraction >= 0.95, fmt("fraction %.4f", r.fraction));
  for (std::size_t h = 1; h < r.curve.size(); ++h)
    t.expect_lazy(r.curve[h - 1] <= r.curve[h], [&] { return "curve drops at " + std::to_string(h); });
  auto out = t.outcome();
  if (out.passed) out.detail = fmt("fraction %.4f", r.fraction) + fmt(", %.4f by step 20", r.curve[20]);
  return out;
}

CheckOutcome no_atoms(const VerifyOptions& o) {
  const MartingaleReport rep = martingale_check(MarkovKind::MC1, observables::h1(), ExtRat(1, 1), 1000, 1024, o.seed, o.exec);
  Tally t;
  t.expect(rep.no_atoms, "a path carries more than the largest constant-tail mass");
  t.expect(rep.one_step_exact && rep.max_deviation == 0.0, "h1 is not a martingale along the paths");
  auto out = t.outcome();
  if (out.passed)
    out.detail = "all 1000 paths below x/(x+n); h1 one-step exact;" + fmt(" 64-window fraction %.3f (reported only)", rep.window_fraction);
  return out;
}

std::vector<Check> build_registry() {
  std::vector<Check> r;
  auto add = [&r](std::string module, std::string name, std::string description,
                  CheckOutcome (*fn)(const VerifyOptions&)) {
    r.push_back({std::move(module), std::move(name), std::move(description), fn});
  };
  add("exact-core", "cf-roundtrip", "cf_from_rat(rat_from_cf(c)) = c for every canonical c with quotient sum <= 14", cf_roundtrip);
  add("exact-core", "depth-levels", "depth equals the SB level on levels 1..12", depth_levels);
  add("exact-core", "depth-identity", "depth(x) = floor(x) + rank({x}) + 1 on random x with 63-bit terms", depth_identity);
  add("exact-core", "phi-mediant", "phi maps mediants of unimodular pairs to mediants", phi_mediant);
  add("exact-core", "complement-involution", "complement_cf is an involution computing 1 - x", complement_involution);
  add("lr-coding", "det-one", "words up to length 16 give determinant-one matrices", det_one);
  add("lr-coding", "word-roundtrip", "rational -> cf -> word -> matrix -> rational on levels 1..12", word_roundtrip);
  add("lr-coding", "hat-involution", "hat is a depth-preserving involution on levels 1..12", hat_involution);
  add("lr-coding", "neighbor-unimodular", "neighbours in the SB sequence satisfy q p' - p q' = 1", neighbor_unimodular);
  add("lr-coding", "pi-prefix", "pi(x) starts with word(x)", pi_prefix);
  add("lr-coding", "code-order", "code comparison agrees with rational comparison", code_order);
  add("tree-gen", "hat-permutation", "permuted SB levels are hat images of plain levels", hat_permutation);
  add("tree-gen", "calkin-wilf", "x_i = b(i-2)/b(i-1) for i <= 2^16, b checked by brute force to 64", calkin_wilf);
  add("tree-gen", "denominator-chaining", "each denominator of the permuted SB sequence is the next numerator", denominator_chaining);
  add("tree-gen", "qmark-image", "? maps Farey levels onto dyadic levels", qmark_image);
  add("tree-gen", "bijection", "levels 1..12 list each fraction of depth <= 12 once", tree_bijection);
  add("minkowski", "qmark-symmetry", "?(x) + ?(1-x) = 1", qmark_symmetry);
  add("minkowski", "rho-reciprocal", "rho(x) + rho(1/x) = 1", rho_reciprocal);
  add("minkowski", "mediant-average", "rho of a mediant is the mean of rho of the parents", mediant_average);
  add("minkowski", "qmark-monotone", "? is strictly increasing on sorted Farey levels", qmark_monotone);
  add("minkowski", "farey-invariance", "the ? measure is invariant under the Farey map", farey_invariance);
  add("minkowski", "rho-dilation", "2 rho(x) = rho(x/(1-x)) and 2 rho(x) = rho(x-1) + 1", rho_dilation);
  add("minkowski", "roundtrip", "rho = ? o phi and both inverses round trip", qmark_roundtrip);
  add("minkowski", "distribution-bound", "|rho(x) - count/2^k| <= 2^-k for 100 points and every k <= 16", distribution_bound);
  add("interval-maps", "bijectivity", "R, S, T invert exactly", maps_bijective);
  add("interval-maps", "counting-orbits", "orbits of R, S, T list the permuted trees row by row", counting_orbits);
  add("interval-maps", "log-diffusion", "max of the first N orbit points of R is floor(log2 N)", log_diffusion);
  add("interval-maps", "conjugacy", "all four commutative squares have zero residual", conjugacy);
  add("interval-maps", "s-cf-action", "S agrees with its continued fraction case split", s_cf_action);
  add("interval-maps", "g-retrace", "retracing with G reproduces the word and lands on 1", g_retrace_check);
  add("interval-maps", "indifferent-fixed-points", "F fixes 0 and 1 with difference quotients tending to 1", indifferent_points);
  add("interval-maps", "eigenfunctions", "v(Tx) = v(x) + 1 mod 2^m, and the same for S through ?-digits", eigenfunctions);
  add("operators", "transfer-fixed", "L_1 fixes 1/x for G and the Farey density for F", transfer_fixed);
  add("operators", "mc0-limit", "P0^20 f(1) is within 1e-2 of the tree integral for f = 1/(1+y)^2", mc0_limit);
  add("operators", "row-stochastic", "P1 = 1 for both chains", row_stochastic);
  add("operators", "p0-invariance", "tree sums of P0 e_1 and e_1 differ by <= 4 * 2^-k, decreasing", p0_invariance);
  add("operators", "nu-invariance", "dx/x is invariant under P1 branch by branch", nu_invariance);
  add("operators", "harmonicity", "1 and h1 are harmonic and commute with averaging", harmonicity);
  add("operators", "power-vs-monte-carlo", "exact operator powers match Monte Carlo within 3 sigma", power_vs_monte_carlo);
  add("stochastic", "cylinder-symmetry", "cylinder symmetry, the x/(x+n) formula and 2^-n for MC0", cylinder_symmetry);
  add("stochastic", "letter-frequencies", "empirical two-letter frequencies match exact cylinders", letter_frequencies);
  add("stochastic", "thread-determinism", "walk batches are identical for 1, 2 and 8 workers", thread_determinism);
  add("stochastic", "hitting-curve", "MC0 from 1 enters (2/5, 3/5) in >= 95% of walks by step 1000", hitting_curve);
  add("stochastic", "no-atoms", "no MC1 path carries more than the constant-tail bound", no_atoms);
  return r;
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = build_registry();
  return registry;
}

std::vector<const Check*> select_checks(const std::vector<Check>& checks, const std::string& suite) {
  std::vector<const Check*> out;
  for (const auto& c : checks)
    if (suite == "all" || suite == c.module || suite == c.id()) out.push_back(&c);
  if (out.empty()) throw std::invalid_argument("no check or module named '" + suite + "'");
  return out;
}

std::vector<CheckResult> run_checks(const std::vector<const Check*>& selection, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  for (const Check* c : selection) {
    CheckResult r{c->id(), false, {}};
    try {
      CheckOutcome o = c->run(opts);
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qorder
