#pragma once

// Minkowski's question mark function ? on [0,1] and its extension
// rho = ? o phi on J, exactly on rationals (values are dyadic), plus the
// counting and Stieltjes estimators over tree levels.

#include "qorder/dyadic.hpp"
#include "qorder/exact_core.hpp"
#include "qorder/observable.hpp"
#include "qorder/parallel.hpp"
#include "qorder/tree_gen.hpp"

namespace qorder {

// Largest binary exponent produced for ? and rho values.
inline constexpr std::uint64_t kMaxDyadicExponent = 1u << 16;

// rho(x) = 1 - sum_{k>=0} (-1)^k 2^{-(a0+...+ak)}; rho(0) = 0, rho(inf) = 1.
Dyadic rho(const ExtRat& x);

// ?(x) = 2 sum_{k>=1} (-1)^{k+1} 2^{-(a1+...+ak)} for x = [0;a1,...,an] in (0,1).
Dyadic qmark(const ExtRat& x);

// Inverses read the binary run lengths of d; both binary readings of d are
// decoded and must agree (std::logic_error otherwise).
ExtRat qmark_inv(const Dyadic& d);
ExtRat rho_inv(const Dyadic& d);

struct Enclosure {
  Dyadic lower;
  Dyadic upper;
  bool extended = false;  // true when the bounds are rho values on J
};

// Bounds on ?(x) (or rho(x) when the prefix does not start with [0; a1 ...])
// valid for every x whose expansion starts with the given quotients.
Enclosure qmark_enclosure(const ContFrac& prefix);

// #{entries of levels 1..k that are <= x} / 2^k.
Rational distribution_estimate(const TreeSpec& spec, unsigned k, const ExtRat& x, const Exec& exec = {});

// The limit the counting ratio approaches: rho for SB, ? for Farey, the
// identity for the dyadic tree.
Rational distribution_reference(const TreeSpec& spec, const ExtRat& x);

// 2^{-k} sum over levels 1..k of f. TreeKind::SB integrates against d rho,
// TreeKind::Farey against d?.
Complex stieltjes_mean(const Observable& f, unsigned k, TreeKind kind = TreeKind::SB, const Exec& exec = {});

}  // namespace qorder
