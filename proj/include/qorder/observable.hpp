#pragma once

// Functions J -> C evaluated at exact points, optionally with an exact
// rational value. Operators work exactly whenever every function involved
// carries the exact capability.

#include "qorder/exact_core.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace qorder {

using Complex = std::complex<double>;

class Observable {
 public:
  using NumericFn = std::function<Complex(const ExtRat&)>;
  using ExactFn = std::function<Rational(const ExtRat&)>;

  static Observable numeric(std::string name, NumericFn fn);
  static Observable exact(std::string name, ExactFn fn);

  const std::string& name() const { return name_; }
  bool has_exact() const { return static_cast<bool>(exact_); }

  Complex operator()(const ExtRat& x) const { return numeric_(x); }
  Rational exact_at(const ExtRat& x) const;

 private:
  std::string name_;
  NumericFn numeric_;
  ExactFn exact_;
};

namespace observables {

Observable constant(const Rational& c);
Observable identity();                 // y; undefined at infinity
Observable reciprocal_fn();            // 1/y; singular at 0, 0 at infinity
Observable inv_square_shift();         // 1/(1+y)^2, 0 at infinity
Observable farey_density();            // 1/(y(1-y)) on (0,1)
Observable fourier(long n);            // e^{2 pi i n y}, set to 1 at infinity
Observable fourier_real(long n);       // cos(2 pi n y), set to 1 at infinity
Observable h1();                       // indicator of {0, inf}
Observable rho_fn();                   // the extended question mark function

}  // namespace observables

// e^{2 pi i n p/q} with the argument reduced mod 1 exactly before rounding.
Complex unit_phase(long n, const ExtRat& x);

}  // namespace qorder
