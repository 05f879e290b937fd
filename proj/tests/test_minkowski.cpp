#include "oracles.hpp"

#include "qorder/minkowski.hpp"

#include <catch_amalgamated.hpp>

using namespace qorder;

namespace {

ContFrac cf(std::initializer_list<long> a) {
  ContFrac c;
  for (long v : a) c.terms.emplace_back(v);
  return c;
}

Dyadic D(long num, std::uint64_t exp) { return Dyadic(Integer(num), exp); }

const TreeSpec kSB{TreeKind::SB, false};
const TreeSpec kF{TreeKind::Farey, false};

}  // namespace

TEST_CASE("dyadic normal form and readings") {
  CHECK(D(4, 3) == D(1, 1));
  CHECK(D(0, 5) == D(0, 0));
  CHECK(Dyadic::parse("3/2^3") == D(3, 3));
  CHECK(Dyadic::parse("6/16") == D(3, 3));
  CHECK_THROWS(Dyadic::parse("1/3"));
  CHECK(D(3, 3).str() == "3/2^3");
  CHECK(D(3, 3).decimal() == "0.375");
  CHECK(D(3, 3).digits(4) == std::vector<int>{0, 1, 1, 0});
  const BinaryWord z = BinaryWord::zeros_reading(D(3, 3));
  const BinaryWord o = BinaryWord::ones_reading(D(3, 3));
  CHECK(z.value() == D(3, 3));
  CHECK(o.value() == D(3, 3));
  CHECK(o.ones_tail);
  CHECK_THROWS(BinaryWord::zeros_reading(D(1, 0)));
  CHECK_THROWS(BinaryWord::ones_reading(D(0, 0)));
}

TEST_CASE("rho and qmark examples") {
  CHECK(rho(ExtRat(1, 3)) == D(1, 3));
  CHECK(rho(ExtRat(3, 1)) == D(7, 3));
  CHECK(rho(ExtRat(2, 3)) == D(3, 3));
  CHECK(rho(ExtRat(0, 1)) == D(0, 0));
  CHECK(rho(ExtRat::infinity()) == D(1, 0));
  CHECK(qmark(ExtRat(1, 2)) == D(1, 1));
  CHECK(qmark(ExtRat(2, 5)) == D(3, 3));
  CHECK(qmark(ExtRat(2, 3)) == D(3, 2));
  CHECK(qmark(ExtRat(0, 1)) == D(0, 0));
  CHECK(qmark(ExtRat(1, 1)) == D(1, 0));
  CHECK_THROWS(qmark(ExtRat(3, 2)));
  CHECK(qmark_inv(D(1, 2)) == ExtRat(1, 3));
  CHECK(qmark_inv(D(3, 3)) == ExtRat(2, 5));
  CHECK(qmark_inv(D(1, 0)) == ExtRat(1, 1));
  CHECK(rho_inv(D(7, 3)) == ExtRat(3, 1));
  CHECK(rho_inv(D(1, 0)).is_infinite());
}

TEST_CASE("rho(1/n) and rho(n)") {
  for (long n = 1; n <= 200; ++n) {
    REQUIRE(rho(ExtRat(1, n)) == D(1, static_cast<std::uint64_t>(n)));
    const Rational expect = 1 - Rational(1) / (Integer(1) << static_cast<mp_bitcnt_t>(n));
    REQUIRE(rho(ExtRat(n, 1)).to_rational() == expect);
  }
}

TEST_CASE("exponent cap") {
  CHECK_NOTHROW(rho(ExtRat(1, 60000)));
  CHECK_THROWS_AS(rho(ExtRat(1, 70000)), std::out_of_range);
}

TEST_CASE("qmark and rho agree with bisection oracles") {
  oracle::Gen gen(31);
  for (int i = 0; i < 3000; ++i) {
    const ExtRat x = gen.by_cf(8, 5);
    REQUIRE(rho(x).to_rational() == oracle::rho_bisection(x));
    if (!(ExtRat(1, 1) < x)) REQUIRE(qmark(x).to_rational() == oracle::qmark_bisection(x));
  }
}

TEST_CASE("rho = qmark o phi and inverses round trip") {
  oracle::Gen gen(32);
  for (int i = 0; i < 10000; ++i) {
    const ExtRat x = gen.positive(15);
    REQUIRE(rho(x) == qmark(phi(x)));
    REQUIRE(rho_inv(rho(x)) == x);
    const ExtRat u = gen.unit(15);
    REQUIRE(qmark_inv(qmark(u)) == u);
  }
}

TEST_CASE("symmetries") {
  oracle::Gen gen(33);
  for (int i = 0; i < 10000; ++i) {
    const ExtRat u = gen.unit(15);
    const ExtRat v = ExtRat::from_rational(1 - u.to_rational());
    REQUIRE((qmark(u) + qmark(v)) == D(1, 0));
    const ExtRat x = gen.positive(15);
    REQUIRE((rho(x) + rho(reciprocal(x))) == D(1, 0));
  }
  CHECK((rho(ExtRat(0, 1)) + rho(ExtRat::infinity())) == D(1, 0));
}

TEST_CASE("mediant goes to the average for unimodular pairs on levels up to 12") {
  for (unsigned k = 1; k <= 12; ++k)
    for_each_in_level(kSB, k, [](std::uint64_t, const ExtRat& x) {
      ExtRat lo(0, 1), hi = ExtRat::infinity();
      for (;;) {
        const ExtRat m = mediant(lo, hi);
        if (m == x) break;
        (x < m ? hi : lo) = m;
      }
      REQUIRE((rho(lo) + rho(hi)).half() == rho(x));
    });
}

TEST_CASE("qmark is strictly increasing on sorted levels") {
  std::vector<ExtRat> all;
  for (unsigned k = 1; k <= 12; ++k) {
    const auto row = level(kF, k);
    all.insert(all.end(), row.begin(), row.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i + 1 < all.size(); ++i) REQUIRE(qmark(all[i]) < qmark(all[i + 1]));
}

TEST_CASE("qmark measure is invariant under the Farey map") {
  auto phi0 = [](const Rational& y) { return ExtRat::from_rational(y / (1 + y)); };
  auto phi1 = [](const Rational& y) { return ExtRat::from_rational(1 / (2 - y)); };
  auto mass = [&](const Rational& a, const Rational& b) {
    return (qmark(phi0(b)) - qmark(phi0(a))) + (qmark(phi1(b)) - qmark(phi1(a)));
  };
  CHECK(mass(Rational(1, 3), Rational(2, 3)) == D(1, 1));
  CHECK((qmark(phi0(Rational(2, 3))) - qmark(phi0(Rational(1, 3)))) == D(1, 2));
  oracle::Gen gen(34);
  for (int i = 0; i < 5000; ++i) {
    Rational a = gen.unit(20).to_rational(), b = gen.unit(20).to_rational();
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    if (gen.below(10) == 0) a = 0;
    REQUIRE(mass(a, b) == qmark(ExtRat::from_rational(b)) - qmark(ExtRat::from_rational(a)));
  }
}

TEST_CASE("doubling relations") {
  CHECK(rho(ExtRat(2, 5)) == D(3, 4));
  CHECK(rho(ExtRat(2, 3)) == D(3, 3));
  oracle::Gen gen(35);
  for (int i = 0; i < 5000; ++i) {
    const ExtRat u = gen.unit(15);
    const Rational r = u.to_rational();
    REQUIRE(rho(u) + rho(u) == rho(ExtRat::from_rational(r / (1 - r))));
    const ExtRat x = gen.positive(15);
    if (x < ExtRat(1, 1)) continue;
    REQUIRE(rho(x) + rho(x) == rho(ExtRat::from_rational(x.to_rational() - 1)) + D(1, 0));
  }
}

TEST_CASE("enclosures") {
  Enclosure e = qmark_enclosure(cf({0, 2}));
  CHECK(e.lower == D(1, 2));
  CHECK(e.upper == D(1, 1));
  CHECK_FALSE(e.extended);
  e = qmark_enclosure(cf({3}));
  CHECK(e.lower == D(7, 3));
  CHECK(e.upper == D(15, 4));
  CHECK(e.extended);
  e = qmark_enclosure(cf({0, 1, 1, 1, 1, 1}));
  const Dyadic a = qmark(ExtRat(5, 8)), b = qmark(ExtRat(8, 13));
  CHECK(e.lower == std::min(a, b));
  CHECK(e.upper == std::max(a, b));
  CHECK((e.upper - e.lower) <= D(1, 5));
  CHECK(e.lower < D(2, 0) - e.upper);  // sanity: bounds are ordered and inside [0,1]
  CHECK_THROWS(qmark_enclosure(ContFrac{}));
  // Every rational continuing the prefix lands inside the enclosure.
  oracle::Gen gen(36);
  for (int i = 0; i < 2000; ++i) {
    std::vector<long> a{0};
    const auto n = gen.range(1, 6);
    long sum = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
      a.push_back(static_cast<long>(gen.range(1, 5)));
      sum += a.back();
    }
    ContFrac prefix;
    for (long v : a) prefix.terms.emplace_back(v);
    const Enclosure enc = qmark_enclosure(prefix);
    REQUIRE((enc.upper - enc.lower) <= D(1, static_cast<std::uint64_t>(sum)));
    auto ext = a;
    for (int j = 0; j < 4; ++j) ext.push_back(static_cast<long>(gen.range(1, 7)));
    const ExtRat x = ExtRat::from_rational(oracle::eval_cf(ext));
    REQUIRE(enc.lower <= qmark(x));
    REQUIRE(qmark(x) <= enc.upper);
  }
}

TEST_CASE("distribution estimates") {
  CHECK(distribution_estimate(kSB, 2, ExtRat(1, 1)) == Rational(1, 2));
  CHECK(distribution_estimate(kF, 2, ExtRat(1, 2)) == Rational(1, 2));
  CHECK(distribution_estimate(kSB, 7, ExtRat(0, 1)) == 0);
  oracle::Gen gen(37);
  for (unsigned k = 1; k <= 14; ++k) {
    const Rational bound = Rational(1, 1) / (Integer(1) << k);
    for (int i = 0; i < 20; ++i) {
      const ExtRat x = gen.positive(12);
      const Rational est = distribution_estimate(kSB, k, x);
      REQUIRE(abs(rho(x).to_rational() - est) <= bound);
      REQUIRE(est == distribution_estimate(kSB, k, x, Exec{1}));
      const ExtRat u = gen.unit(12);
      REQUIRE(abs(qmark(u).to_rational() - distribution_estimate(kF, k, u)) <= bound);
    }
  }
}

TEST_CASE("Stieltjes means") {
  const auto one = observables::constant(1);
  for (unsigned k : {1u, 5u, 12u}) {
    const double expect = 1.0 - std::ldexp(1.0, -static_cast<int>(k));
    CHECK(std::abs(stieltjes_mean(one, k) - Complex(expect)) < 1e-15);
  }
  const auto e1 = observables::fourier(1);
  // Successive estimates settle: each step moves at most 2^-(k-3) and
  // the moves shrink.
  std::vector<Complex> c;
  for (unsigned k = 12; k <= 18; ++k) c.push_back(stieltjes_mean(e1, k, TreeKind::SB, Exec::all()));
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double move = std::abs(c[i] - c[i - 1]);
    CHECK(move <= std::ldexp(1.0, -static_cast<int>(12 + i) + 3));
    if (i > 1) CHECK(move < std::abs(c[i - 1] - c[i - 2]));
  }
  CHECK(stieltjes_mean(e1, 16, TreeKind::SB, Exec{1}) == stieltjes_mean(e1, 16, TreeKind::SB, Exec{8}));
}
