#pragma once

// Transfer operators L_q of G, D and F, the Markov operators P0, P1 of the
// chains MC0 and MC1, the averaging operator A and the harmonic-function
// series. Every operator has a floating point form and, when the observable
// is exact, an exact rational form.

#include "qorder/exact_core.hpp"
#include "qorder/observable.hpp"
#include "qorder/parallel.hpp"

#include <functional>
#include <string>
#include <utility>

namespace qorder {

enum class Generator { G, dyadic, Farey };

struct TransferKind {
  Generator generator = Generator::G;
  double q = 1.0;

  bool integral_q() const;
};

// Two-term sum over the inverse branches of the generator with weights
// |derivative|^-q. Exact when q is an integer and f has an exact form.
Complex transfer_apply(const TransferKind& kind, const Observable& f, const ExtRat& x);
Rational transfer_apply_exact(const TransferKind& kind, const Observable& f, const ExtRat& x);
double transfer_apply(const TransferKind& kind, const std::function<double(double)>& f, double x);

// f(x) - f(x+1) - (1+x)^(-2q) f(x/(1+x)).
double lewis_zagier_residual(const std::function<double(double)>& f, double q, double x);
Rational lewis_zagier_residual_exact(const Observable& f, long q, const ExtRat& x);

enum class MarkovKind { MC0, MC1 };

std::string markov_name(MarkovKind k);

// (p(0,x), p(1,x)). MC0 is fair everywhere; MC1 uses 1/(x+1), x/(x+1) with
// p(0,0) = p(1,inf) = 1.
std::pair<Rational, Rational> transition_probs(MarkovKind kind, const ExtRat& x);

// Phi_0(x) = x/(1+x), Phi_1(x) = x+1 on J.
ExtRat branch(int s, const ExtRat& x);

// (Pf)(x); branches of probability zero are not evaluated.
Complex markov_apply(MarkovKind kind, const Observable& f, const ExtRat& x);
Rational markov_apply_exact(MarkovKind kind, const Observable& f, const ExtRat& x);

// P f as an observable, exact when f is.
Observable markov_observable(MarkovKind kind, const Observable& f);

inline constexpr unsigned kMaxPower = 24;

// (P^n f)(x) expanded over the 2^n letter words. Cylinder weights are exact;
// the weighted leaf values are accumulated in compensated double precision
// over a fixed set of subtrees.
Complex markov_power(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n, const Exec& exec = {});
// Fully exact expansion, serial.
Rational markov_power_exact(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n);

// (Af)(x) = (f(x) + f(1/x)) / 2.
Complex averaging_apply(const Observable& f, const ExtRat& x);
Observable averaging_observable(const Observable& f);

// (P(Af) - A(Pf))(x).
Complex commutator_residual(MarkovKind kind, const Observable& f, const ExtRat& x);
Rational commutator_residual_exact(MarkovKind kind, const Observable& f, const ExtRat& x);

struct HarmonicPartial {
  Complex partial;
  Rational tail_weight;
};

// sum_{k<N} w_k h(Phi_0(x+k)) with w_k = 2^-(k+1) (MC0) or x/((x+k)(x+k+1))
// (MC1), and the weight 2^-N or x/(x+N) still missing.
HarmonicPartial harmonic_series_partial(MarkovKind kind, const Observable& h, const ExtRat& x, unsigned N);
Rational harmonic_series_partial_exact(MarkovKind kind, const Observable& h, const ExtRat& x, unsigned N);

// Indicator of the absorbing pair {0, inf}.
Rational h1(const ExtRat& x);

struct NuBranchCheck {
  bool exact_ok = false;   // log arguments agree as rationals on both branches
  double quadrature_error = 0.0;
};

// Invariance of dx/x under P1 on the interval (a, b), 0 < a < b finite.
NuBranchCheck nu_branch_check(const ExtRat& a, const ExtRat& b);

namespace reference {

// Recursive operator application P(P(...P f)).
Complex markov_power(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n);

}  // namespace reference

}  // namespace qorder
