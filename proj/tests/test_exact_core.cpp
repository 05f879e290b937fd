#include "oracles.hpp"

#include "qorder/exact_core.hpp"
#include "qorder/tree_gen.hpp"

#include <catch_amalgamated.hpp>

using namespace qorder;

namespace {

ContFrac cf(std::initializer_list<long> a) {
  ContFrac c;
  for (long v : a) c.terms.emplace_back(v);
  return c;
}

// Every canonical expansion with quotient sum exactly `total`.
void canonical_cfs(long total, std::vector<long>& prefix, long remaining, std::vector<ContFrac>& out) {
  if (remaining == 0) {
    ContFrac c;
    for (long v : prefix) c.terms.emplace_back(v);
    if (c.is_canonical()) out.push_back(c);
    return;
  }
  for (long a = 1; a <= remaining; ++a) {
    prefix.push_back(a);
    canonical_cfs(total, prefix, remaining - a, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("ExtRat reduces and orders with infinity on top") {
  CHECK(ExtRat(6, 4) == ExtRat(3, 2));
  CHECK(ExtRat(0, 7) == ExtRat(0, 1));
  CHECK(ExtRat(5, 0) == ExtRat::infinity());
  CHECK(ExtRat(3, 2) < ExtRat::infinity());
  CHECK(ExtRat(0, 1) < ExtRat(1, 1000000));
  CHECK_THROWS(ExtRat(0, 0));
  CHECK_THROWS(ExtRat(-1, 2));
  CHECK(ExtRat::parse("12/8").str() == "3/2");
  CHECK(ExtRat::parse("1/0").is_infinite());
  CHECK(ExtRat::parse("inf").is_infinite());
  CHECK(ExtRat::parse("5") == ExtRat(5, 1));
  CHECK_THROWS(ExtRat::parse("3/x"));
  CHECK_THROWS(ExtRat::parse("-1/2"));
}

TEST_CASE("mediant examples") {
  CHECK(mediant(ExtRat(0, 1), ExtRat::infinity()) == ExtRat(1, 1));
  CHECK(mediant(ExtRat(1, 2), ExtRat(1, 1)) == ExtRat(2, 3));
  CHECK(mediant(ExtRat(1, 3), ExtRat(1, 2)) == ExtRat(2, 5));
  CHECK(mediant(ExtRat(2, 3), ExtRat(2, 3)) == ExtRat(2, 3));
}

TEST_CASE("continued fraction examples") {
  CHECK(cf_from_rat(ExtRat(3, 5)) == cf({0, 1, 1, 2}));
  CHECK(cf_from_rat(ExtRat(7, 3)) == cf({2, 3}));
  CHECK(cf_from_rat(ExtRat(0, 1)) == cf({0}));
  CHECK_THROWS(cf_from_rat(ExtRat::infinity()));
  CHECK(rat_from_cf(cf({0, 1, 1, 2})) == ExtRat(3, 5));
  CHECK(rat_from_cf(cf({0, 1})) == ExtRat(1, 1));
  CHECK(canonicalize(cf({0, 1})) == cf({1}));
  CHECK(rat_from_cf(cf({2, 3})) == ExtRat(7, 3));
  CHECK(rat_from_cf(ContFrac{}).is_infinite());
  CHECK(ContFrac::parse("[0;1,1,2]") == cf({0, 1, 1, 2}));
  CHECK(cf({2, 3}).str() == "[2;3]");
}

TEST_CASE("cf_from_rat agrees with machine Euclid") {
  oracle::Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    const long long p = static_cast<long>(gen.range(0, 1u << 30));
    const long long q = static_cast<long>(gen.range(1, 1u << 30));
    const ExtRat x(p, q);
    const auto expect = oracle::euclid(x.num().get_si(), x.den().get_si());
    const auto got = cf_from_rat(x);
    REQUIRE(got.terms.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(got.terms[k] == expect[k]);
    CHECK(got.is_canonical());
  }
}

TEST_CASE("round trip over every canonical expansion with quotient sum at most 14") {
  std::size_t count = 0;
  for (long total = 1; total <= 14; ++total) {
    for (long a0 = 0; a0 <= total; ++a0) {
      std::vector<ContFrac> tails;
      std::vector<long> prefix{a0};
      canonical_cfs(total, prefix, total - a0, tails);
      for (const auto& c : tails) {
        if (c.terms.size() == 1 && c.terms[0] == 0) continue;
        REQUIRE(cf_from_rat(rat_from_cf(c)) == c);
        ++count;
      }
    }
  }
  // Each x in Q+ of depth d appears once, and there are 2^(d-1) of them.
  CHECK(count == (std::size_t{1} << 14) - 1);
}

TEST_CASE("depth and rank") {
  CHECK(depth(ExtRat(1, 1)) == 1);
  CHECK(depth(ExtRat(3, 5)) == 4);
  CHECK(depth(ExtRat(7, 3)) == 5);
  CHECK(rank(ExtRat(1, 3)) == 2);
  CHECK(rank(ExtRat(1, 2)) == 1);
  CHECK(depth(ExtRat(0, 1)) == 0);
  CHECK(depth(ExtRat::infinity()) == 0);
  CHECK(rank(ExtRat(0, 1)) == 0);
  CHECK(rank(ExtRat(1, 1)) == 0);
  CHECK_THROWS(rank(ExtRat(3, 2)));
}

TEST_CASE("depth equals the SB level for levels 1..12") {
  for (unsigned k = 1; k <= 12; ++k)
    for_each_in_level(TreeSpec{TreeKind::SB, false}, k, [k](std::uint64_t, const ExtRat& x) {
      REQUIRE(depth(x) == k);
    });
}

TEST_CASE("depth = floor + rank(frac) + 1 on non-integers") {
  oracle::Gen gen(12);
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = gen.positive(63);
    if (x.is_integer()) continue;
    REQUIRE(depth(x) == floor_of(x) + rank(frac_of(x)) + 1);
  }
  // Integers sit one level lower than the identity predicts.
  for (long n = 1; n < 50; ++n) CHECK(depth(ExtRat(n, 1)) == floor_of(ExtRat(n, 1)) + rank(ExtRat(0, 1)));
}

TEST_CASE("complement_cf") {
  CHECK(complement_cf(cf({0, 1, 2})) == cf({0, 3}));
  CHECK(complement_cf(cf({0, 3})) == cf({0, 1, 2}));
  CHECK(complement_cf(cf({0, 2, 2})) == cf({0, 1, 1, 2}));
  CHECK_THROWS(complement_cf(cf({1})));
  CHECK_THROWS(complement_cf(cf({0})));
  oracle::Gen gen(13);
  for (int i = 0; i < 2000; ++i) {
    const ExtRat x = gen.unit(40);
    const ContFrac c = cf_from_rat(x);
    const ContFrac d = complement_cf(c);
    REQUIRE(d.is_canonical());
    REQUIRE(rat_from_cf(d).to_rational() == 1 - x.to_rational());
    REQUIRE(complement_cf(d) == c);
  }
}

TEST_CASE("phi") {
  CHECK(phi(ExtRat::infinity()) == ExtRat(1, 1));
  CHECK(phi(ExtRat(1, 1)) == ExtRat(1, 2));
  CHECK(phi(ExtRat(3, 2)) == ExtRat(3, 5));
  CHECK(phi_inv(ExtRat(1, 1)).is_infinite());
  CHECK_THROWS(phi_inv(ExtRat(3, 2)));
  oracle::Gen gen(14);
  for (int i = 0; i < 10000; ++i) {
    // Unimodular pair: the parents of a random rational.
    const ExtRat x = gen.by_cf(10, 20);
    ExtRat lo(0, 1), hi = ExtRat::infinity();
    for (;;) {
      const ExtRat m = mediant(lo, hi);
      if (m == x) break;
      (x < m ? hi : lo) = m;
    }
    REQUIRE(cross(lo, hi) == 1);
    REQUIRE(phi(mediant(lo, hi)) == mediant(phi(lo), phi(hi)));
    REQUIRE(phi_inv(phi(x)) == x);
  }
}
