#include "qorder/observable.hpp"

#include "qorder/minkowski.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qorder {

Observable Observable::numeric(std::string name, NumericFn fn) {
  Observable o;
  o.name_ = std::move(name);
  o.numeric_ = std::move(fn);
  return o;
}

Observable Observable::exact(std::string name, ExactFn fn) {
  Observable o;
  o.name_ = std::move(name);
  o.numeric_ = [fn](const ExtRat& x) { return Complex(fn(x).get_d(), 0.0); };
  o.exact_ = std::move(fn);
  return o;
}

Rational Observable::exact_at(const ExtRat& x) const {
  if (!exact_) throw std::logic_error(name_ + " has no exact evaluation");
  return exact_(x);
}

Complex unit_phase(long n, const ExtRat& x) {
  if (x.is_infinite()) return {1.0, 0.0};
  Integer r = x.num() * n;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), x.den().get_mpz_t());
  const double t = Rational(r, x.den()).get_d();
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

namespace observables {

Observable constant(const Rational& c) {
  return Observable::exact("const(" + c.get_str() + ")", [c](const ExtRat&) { return c; });
}

Observable identity() {
  return Observable::exact("y", [](const ExtRat& y) {
    if (y.is_infinite()) throw std::domain_error("y is unbounded at infinity");
    return y.to_rational();
  });
}

Observable reciprocal_fn() {
  return Observable::exact("1/y", [](const ExtRat& y) {
    if (y.is_zero()) throw std::domain_error("1/y is singular at 0");
    if (y.is_infinite()) return Rational(0);
    return Rational(y.den(), y.num());
  });
}

Observable inv_square_shift() {
  return Observable::exact("1/(1+y)^2", [](const ExtRat& y) {
    if (y.is_infinite()) return Rational(0);
    const Integer s = y.num() + y.den();
    Rational r(y.den() * y.den(), s * s);
    r.canonicalize();
    return r;
  });
}

Observable farey_density() {
  return Observable::exact("1/(y(1-y))", [](const ExtRat& y) {
    if (y.is_zero() || !(y < ExtRat(1, 1))) throw std::domain_error("Farey density is singular outside (0,1)");
    Rational r(y.den() * y.den(), y.num() * (y.den() - y.num()));
    r.canonicalize();
    return r;
  });
}

Observable fourier(long n) {
  return Observable::numeric("e_" + std::to_string(n), [n](const ExtRat& y) { return unit_phase(n, y); });
}

Observable fourier_real(long n) {
  return Observable::numeric("cos_" + std::to_string(n),
                             [n](const ExtRat& y) { return Complex(unit_phase(n, y).real(), 0.0); });
}

Observable h1() {
  return Observable::exact("h1", [](const ExtRat& y) {
    return (y.is_zero() || y.is_infinite()) ? Rational(1) : Rational(0);
  });
}

Observable rho_fn() {
  return Observable::exact("rho", [](const ExtRat& y) { return rho(y).to_rational(); });
}

}  // namespace observables

}  // namespace qorder
