#pragma once

// The counting maps R (on J), S, T (on [0,1]) and the two-to-one maps G, F, D,
// all in exact arithmetic. R, S, T enumerate the permuted trees one entry at
// a time; G, F, D produce them genealogically through their inverse branches.

#include "qorder/dyadic.hpp"
#include "qorder/exact_core.hpp"
#include "qorder/lr_coding.hpp"
#include "qorder/observable.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qorder {

enum class MapId { R, S, T, G, F, D };

std::string map_name(MapId m);
MapId parse_map(std::string_view name);

inline constexpr std::uint64_t kMaxOrbit = std::uint64_t{1} << 24;

ExtRat apply(MapId m, const ExtRat& x);

// Inverse of the bijections R, S, T.
ExtRat apply_inverse(MapId m, const ExtRat& x);

// (Phi_0(x), Phi_1(x)) for G, F, D, in tree order.
std::pair<ExtRat, ExtRat> inverse_branches(MapId m, const ExtRat& x);

// start, m(start), ..., count entries in total.
std::vector<ExtRat> orbit(MapId m, const ExtRat& start, std::uint64_t count);

enum class Diagram {
  S_vs_phi_R_phiinv,  // S = phi R phi^{-1}
  T_qmark_vs_qmark_S,  // T o ? = ? o S
  F_phi_vs_phi_G,      // F o phi = phi o G
  D_qmark_vs_qmark_F,  // D o ? = ? o F
};

std::string diagram_name(Diagram d);

// Exact signed difference between the two sides of a commutative square.
Rational conjugacy_residual(Diagram d, const ExtRat& x);

// S through its action on continued fractions, including the conventions
// for zero quotients and finite expansions.
ContFrac s_on_cf(const ContFrac& cf);

// Letters produced by retracing x to the root with G: L when G^{i-1}(x) < 1.
LRWord g_retrace(const ExtRat& x);

enum class StackFamily { A, B, C };

struct StackInterval {
  StackFamily family;
  std::uint64_t index;
  unsigned stage;
  ExtRat left;   // closed end
  ExtRat right;  // open end
};

// A(i,n) = T^{i-1}[0, 2^-n), B = ?^{-1}(A), C = phi^{-1}(B).
StackInterval stack_interval(StackFamily family, std::uint64_t i, unsigned n);

// Limit of m(y) as y increases to x, using the affine or Moebius piece that
// contains points just left of x. Defined for S and T on (0,1].
ExtRat left_limit(MapId m, const ExtRat& x);

// v(x): first m binary digits of x read least significant first.
std::uint64_t odometer_value(const Dyadic& x, unsigned m);
std::uint64_t odometer_value(const ExtRat& x, unsigned m);

struct EigenCheck {
  Complex mapped;   // f(map(x))
  Complex rotated;  // e^{2 pi i / 2^m} f(x)
  std::uint64_t v_before = 0;
  std::uint64_t v_after = 0;
  bool exact_ok = false;  // v_after == v_before + 1 mod 2^m
};

// f(x) = e^{2 pi i v(x) / 2^m}; for S the digits are those of ?(x).
EigenCheck eigenfunction_check(unsigned m, const ExtRat& x, MapId map);

// (1/N) sum_{k<N} e_n(m^k(start)) for m in {R, S}.
Complex ergodic_fourier(long n, const ExtRat& start, std::uint64_t iters, MapId map);

// Same means for several frequencies along a single pass over the orbit.
std::vector<Complex> ergodic_fourier(const std::vector<long>& ns, const ExtRat& start, std::uint64_t iters,
                                     MapId map);

}  // namespace qorder
