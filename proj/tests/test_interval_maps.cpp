#include "oracles.hpp"

#include "qorder/interval_maps.hpp"
#include "qorder/minkowski.hpp"
#include "qorder/tree_gen.hpp"

#include <catch_amalgamated.hpp>

using namespace qorder;

namespace {

ExtRat Q(long p, long q) { return ExtRat(p, q); }

ContFrac cf(std::initializer_list<long> a) {
  ContFrac c;
  for (long v : a) c.terms.emplace_back(v);
  return c;
}

// Domain of each map: J for R and G, [0,1] otherwise.
ExtRat sample(oracle::Gen& gen, MapId m) {
  if (m == MapId::R || m == MapId::G) return gen.positive(20);
  return gen.unit(20);
}

}  // namespace

TEST_CASE("map examples") {
  CHECK(apply(MapId::R, Q(5, 2)) == Q(2, 5));
  CHECK(apply(MapId::T, Q(5, 8)) == Q(3, 8));
  CHECK(apply(MapId::G, Q(7, 3)) == Q(4, 3));
  CHECK(apply(MapId::G, Q(4, 7)) == Q(4, 3));
  CHECK(apply(MapId::R, ExtRat::infinity()) == Q(0, 1));
  CHECK(apply(MapId::S, Q(1, 1)) == Q(0, 1));
  CHECK(apply(MapId::S, Q(0, 1)) == Q(1, 2));
  CHECK(apply(MapId::T, Q(1, 1)) == Q(0, 1));
  CHECK(apply(MapId::T, Q(1, 4)) == Q(3, 4));
  CHECK(apply(MapId::G, ExtRat::infinity()).is_infinite());
  CHECK(apply(MapId::F, Q(0, 1)) == Q(0, 1));
  CHECK(apply(MapId::F, Q(1, 1)) == Q(1, 1));
  CHECK(apply(MapId::D, Q(1, 1)) == Q(1, 1));
  CHECK(apply(MapId::D, Q(3, 4)) == Q(1, 2));
  CHECK_THROWS(apply(MapId::S, Q(3, 2)));
  CHECK_THROWS(apply(MapId::T, ExtRat::infinity()));
  CHECK(parse_map("S") == MapId::S);
  CHECK_THROWS(parse_map("Q"));
}

TEST_CASE("inverse examples") {
  CHECK(apply_inverse(MapId::R, Q(2, 5)) == Q(5, 2));
  CHECK(apply_inverse(MapId::S, Q(1, 3)) == Q(1, 2));
  CHECK(apply_inverse(MapId::R, Q(0, 1)).is_infinite());
  CHECK(apply_inverse(MapId::R, Q(1, 1)) == Q(0, 1));
  CHECK(apply_inverse(MapId::T, Q(0, 1)) == Q(1, 1));
  CHECK(inverse_branches(MapId::F, Q(3, 5)) == std::pair{Q(3, 8), Q(5, 7)});
  CHECK(inverse_branches(MapId::G, Q(4, 3)) == std::pair{Q(4, 7), Q(7, 3)});
  CHECK(inverse_branches(MapId::D, Q(1, 2)) == std::pair{Q(1, 4), Q(3, 4)});
  CHECK_THROWS(apply_inverse(MapId::G, Q(1, 2)));
  CHECK_THROWS(inverse_branches(MapId::R, Q(1, 2)));
}

TEST_CASE("bijections invert exactly") {
  oracle::Gen gen(41);
  for (MapId m : {MapId::R, MapId::S, MapId::T}) {
    for (int i = 0; i < 10000; ++i) {
      const ExtRat x = sample(gen, m);
      REQUIRE(apply_inverse(m, apply(m, x)) == x);
      REQUIRE(apply(m, apply_inverse(m, x)) == x);
    }
  }
}

TEST_CASE("two-to-one maps have exactly two preimages") {
  oracle::Gen gen(42);
  for (MapId m : {MapId::G, MapId::F, MapId::D}) {
    for (int i = 0; i < 5000; ++i) {
      const ExtRat x = sample(gen, m);
      const auto [a, b] = inverse_branches(m, x);
      REQUIRE(a < b);
      REQUIRE(apply(m, a) == x);
      REQUIRE(apply(m, b) == x);
    }
  }
}

TEST_CASE("orbit examples") {
  const auto r = orbit(MapId::R, ExtRat::infinity(), 9);
  const std::vector<ExtRat> expect{ExtRat::infinity(), Q(0, 1), Q(1, 1), Q(1, 2), Q(2, 1),
                                   Q(1, 3),            Q(3, 2), Q(2, 3), Q(3, 1)};
  CHECK(r == expect);
  CHECK(orbit(MapId::T, Q(1, 1), 4) == std::vector<ExtRat>{Q(1, 1), Q(0, 1), Q(1, 2), Q(1, 4)});
  CHECK_THROWS_AS(orbit(MapId::R, Q(1, 1), kMaxOrbit + 1), std::out_of_range);
  const auto big = orbit(MapId::R, ExtRat::infinity(), (1u << 16) + 1);
  for (long n = 1; n <= 16; ++n) REQUIRE(big[std::size_t{1} << n] == Q(n, 1));
}

TEST_CASE("orbits count the permuted trees") {
  const std::pair<MapId, TreeSpec> cases[] = {
      {MapId::R, {TreeKind::SB, true}},
      {MapId::S, {TreeKind::Farey, true}},
      {MapId::T, {TreeKind::Dyadic, true}},
  };
  for (const auto& [m, spec] : cases) {
    const ExtRat start = m == MapId::R ? ExtRat::infinity() : Q(1, 1);
    const auto o = orbit(m, start, (1u << 12) + 1);
    for (unsigned k = 1; k <= 12; ++k) {
      const auto row = level(spec, k);
      const std::size_t first = (std::size_t{1} << (k - 1)) + 1;
      for (std::size_t i = 0; i < row.size(); ++i) REQUIRE(o[first + i] == row[i]);
    }
  }
}

TEST_CASE("R orbit grows logarithmically") {
  const auto o = orbit(MapId::R, ExtRat::infinity(), (1u << 16) + 1);
  ExtRat running(0, 1);
  for (std::size_t n = 1; n <= (1u << 16); ++n) {
    if (running < o[n]) running = o[n];
    const long lg = static_cast<long>(std::bit_width(n)) - 1;
    REQUIRE(running == Q(lg, 1));
  }
}

TEST_CASE("conjugacy examples") {
  CHECK(conjugacy_residual(Diagram::T_qmark_vs_qmark_S, Q(2, 3)) == 0);
  CHECK(qmark(apply(MapId::S, Q(2, 3))) == Dyadic(Integer(1), 3));
  CHECK(conjugacy_residual(Diagram::F_phi_vs_phi_G, Q(7, 3)) == 0);
  CHECK(apply(MapId::F, phi(Q(7, 3))) == Q(4, 7));
  for (Diagram d : {Diagram::S_vs_phi_R_phiinv, Diagram::T_qmark_vs_qmark_S, Diagram::F_phi_vs_phi_G,
                    Diagram::D_qmark_vs_qmark_F}) {
    const bool on_J = d == Diagram::F_phi_vs_phi_G;
    CHECK(conjugacy_residual(d, on_J ? ExtRat::infinity() : Q(1, 1)) == 0);
  }
}

TEST_CASE("conjugacy residuals vanish on levels up to 12") {
  for (unsigned k = 1; k <= 12; ++k) {
    for_each_in_level({TreeKind::SB, false}, k, [](std::uint64_t, const ExtRat& x) {
      REQUIRE(conjugacy_residual(Diagram::F_phi_vs_phi_G, x) == 0);
    });
    for_each_in_level({TreeKind::Farey, false}, k, [](std::uint64_t, const ExtRat& x) {
      REQUIRE(conjugacy_residual(Diagram::S_vs_phi_R_phiinv, x) == 0);
      REQUIRE(conjugacy_residual(Diagram::T_qmark_vs_qmark_S, x) == 0);
      REQUIRE(conjugacy_residual(Diagram::D_qmark_vs_qmark_F, x) == 0);
    });
  }
}

TEST_CASE("S acts on continued fractions by the case split") {
  CHECK(rat_from_cf(s_on_cf(cf({0, 2}))) == Q(1, 3));
  CHECK(rat_from_cf(s_on_cf(cf({0, 1, 2}))) == Q(1, 4));
  oracle::Gen gen(43);
  for (int i = 0; i < 1000; ++i) {
    const ExtRat x = gen.unit(24);
    REQUIRE(rat_from_cf(s_on_cf(cf_from_rat(x))) == apply(MapId::S, x));
  }
}

TEST_CASE("G retraces the LR word") {
  for (unsigned k = 1; k <= 12; ++k)
    for_each_in_level({TreeKind::SB, false}, k, [](std::uint64_t, const ExtRat& x) {
      REQUIRE(g_retrace(x) == word_from_cf(cf_from_rat(x)));
      ExtRat y = x;
      const long steps = depth(x).get_si() - 1;
      for (long i = 0; i < steps; ++i) y = apply(MapId::G, y);
      REQUIRE(y == Q(1, 1));
    });
}

TEST_CASE("Farey map has indifferent fixed points") {
  CHECK(apply(MapId::F, Q(0, 1)) == Q(0, 1));
  CHECK(apply(MapId::F, Q(1, 1)) == Q(1, 1));
  Rational prev0 = 3, prev1 = 3;
  for (unsigned j = 1; j <= 40; ++j) {
    const Rational h = Rational(1) / (Integer(1) << j);
    const Rational d0 = (apply(MapId::F, ExtRat::from_rational(h)).to_rational()) / h;
    const Rational d1 = (1 - apply(MapId::F, ExtRat::from_rational(1 - h)).to_rational()) / h;
    REQUIRE(abs(d0 - 1) < abs(prev0 - 1));
    REQUIRE(abs(d1 - 1) < abs(prev1 - 1));
    REQUIRE(abs(d0 - 1) <= 2 * h);
    REQUIRE(abs(d1 - 1) <= 2 * h);
    prev0 = d0;
    prev1 = d1;
  }
}

TEST_CASE("stack intervals") {
  auto a = stack_interval(StackFamily::A, 2, 3);
  CHECK(a.left == Q(1, 2));
  CHECK(a.right == Q(5, 8));
  auto b = stack_interval(StackFamily::B, 1, 2);
  CHECK(b.left == Q(0, 1));
  CHECK(b.right == Q(1, 3));
  for (unsigned n = 1; n <= 10; ++n) {
    a = stack_interval(StackFamily::A, 1, n);
    CHECK(a.left == Q(0, 1));
    CHECK(a.right == ExtRat(Integer(1), Integer(1) << n));
  }
  CHECK_THROWS(stack_interval(StackFamily::A, 0, 3));
  CHECK_THROWS(stack_interval(StackFamily::A, 9, 3));
  CHECK_THROWS(stack_interval(StackFamily::A, 1, 21));
  // A(i+1) = T(A(i)), and the A intervals of a stage tile [0,1).
  for (unsigned n = 1; n <= 8; ++n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<std::pair<ExtRat, ExtRat>> tiles;
    for (std::uint64_t i = 1; i <= count; ++i) {
      const auto ai = stack_interval(StackFamily::A, i, n);
      tiles.emplace_back(ai.left, ai.right);
      if (i < count) {
        const auto next = stack_interval(StackFamily::A, i + 1, n);
        REQUIRE(apply(MapId::T, ai.left) == next.left);
        REQUIRE(left_limit(MapId::T, ai.right) == next.right);
      }
      const auto bi = stack_interval(StackFamily::B, i, n);
      REQUIRE(qmark(bi.left).to_extrat() == ai.left);
      REQUIRE(qmark(bi.right).to_extrat() == ai.right);
      const auto ci = stack_interval(StackFamily::C, i, n);
      REQUIRE(phi(ci.left) == bi.left);
      REQUIRE(phi(ci.right) == bi.right);
    }
    std::sort(tiles.begin(), tiles.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    REQUIRE(tiles.front().first == Q(0, 1));
    REQUIRE(tiles.back().second == Q(1, 1));
    for (std::size_t i = 0; i + 1 < tiles.size(); ++i) REQUIRE(tiles[i].second == tiles[i + 1].first);
  }
}

TEST_CASE("odometer eigenfunctions") {
  CHECK(odometer_value(Q(3, 16), 2) == 0);
  CHECK(odometer_value(Q(11, 16), 2) == 1);
  CHECK(odometer_value(Q(7, 16), 2) == 2);
  auto e = eigenfunction_check(2, Q(3, 16), MapId::T);
  CHECK(e.v_before == 0);
  CHECK(e.v_after == 1);
  CHECK(e.exact_ok);
  e = eigenfunction_check(2, Q(11, 16), MapId::T);
  CHECK(e.v_before == 1);
  CHECK(e.v_after == 2);
  oracle::Gen gen(44);
  for (int i = 0; i < 2000; ++i) {
    const ExtRat x = gen.unit(16);
    const auto one = eigenfunction_check(1, x, MapId::T);
    const Complex f_x = one.v_before == 0 ? Complex(1) : Complex(-1);
    REQUIRE(std::abs(one.mapped + f_x) < 1e-12);
    REQUIRE(std::abs(one.mapped - one.rotated) < 1e-12);
    const unsigned m = static_cast<unsigned>(gen.range(1, 12));
    for (MapId map : {MapId::T, MapId::S}) {
      const ExtRat y = map == MapId::T ? ExtRat(Integer(gen.below(1u << 16)), Integer(1) << 16) : gen.unit(10);
      const auto r = eigenfunction_check(m, y, map);
      REQUIRE(r.exact_ok);
      REQUIRE(std::abs(r.mapped - r.rotated) < 1e-12);
    }
  }
  CHECK_THROWS(eigenfunction_check(13, Q(1, 2), MapId::T));
  CHECK_THROWS(eigenfunction_check(2, Q(1, 2), MapId::R));
}

TEST_CASE("ergodic Fourier means") {
  CHECK(ergodic_fourier(0, Q(1, 1), 1000, MapId::R) == Complex(1.0, 0.0));
  const Complex erg = ergodic_fourier(1, Q(1, 1), 1u << 18, MapId::R);
  const Complex tree = stieltjes_mean(observables::fourier(1), 18, TreeKind::SB, Exec::all());
  CHECK(std::abs(erg - tree) < 0.02);
  const Complex erg_s = ergodic_fourier(1, Q(1, 1), 1u << 16, MapId::S);
  const Complex tree_f = stieltjes_mean(observables::fourier(1), 16, TreeKind::Farey, Exec::all());
  CHECK(std::abs(erg_s - tree_f) < 0.02);
  const auto several = ergodic_fourier(std::vector<long>{0, 1, 2}, Q(1, 1), 4096, MapId::R);
  CHECK(several[1] == ergodic_fourier(1, Q(1, 1), 4096, MapId::R));
  CHECK(several[2] == ergodic_fourier(2, Q(1, 1), 4096, MapId::R));
  CHECK_THROWS(ergodic_fourier(1, ExtRat::infinity(), 10, MapId::R));
  CHECK_THROWS(ergodic_fourier(1, Q(1, 2), 10, MapId::T));
}
