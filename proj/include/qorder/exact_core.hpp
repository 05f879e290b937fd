#pragma once

// Exact extended rationals on J = [0, inf] and their continued fractions.
//
// Everything here is unbounded-integer exact. The point at infinity is the
// reduced fraction 1/0 and zero is 0/1; no other zero denominator exists.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qorder {

using Integer = mpz_class;
using Rational = mpq_class;  // signed, always canonical

class ExtRat {
 public:
  ExtRat() : num_(0), den_(1) {}
  ExtRat(const Integer& num, const Integer& den);
  ExtRat(long num, long den) : ExtRat(Integer(num), Integer(den)) {}

  // Caller guarantees gcd(num, den) = 1 and both nonnegative.
  static ExtRat coprime(Integer num, Integer den);
  static ExtRat infinity() { return coprime(1, 0); }
  static ExtRat from_rational(const Rational& r);
  static ExtRat parse(std::string_view text);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_zero() const { return sgn(num_) == 0; }
  bool is_infinite() const { return sgn(den_) == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational to_rational() const;  // throws on infinity
  double to_double() const;      // +inf for infinity
  std::string str() const;

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  struct Trusted {};
  ExtRat(Trusted, Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {}

  Integer num_;
  Integer den_;
};

// Canonical continued fraction [a0; a1, ..., an]. The empty sequence stands
// for infinity; [0] is zero. Canonical means a_i >= 1 for i >= 1 and a_n > 1
// whenever n >= 1.
struct ContFrac {
  std::vector<Integer> terms;

  bool is_infinity() const { return terms.empty(); }
  bool is_canonical() const;
  // Index n of the last partial quotient. Requires a non-empty expansion.
  std::size_t last_index() const { return terms.size() - 1; }
  std::string str() const;
  static ContFrac parse(std::string_view text);

  friend bool operator==(const ContFrac&, const ContFrac&) = default;
};

ExtRat mediant(const ExtRat& a, const ExtRat& b);

// Signed unimodular determinant q_a p_b - p_a q_b.
Integer cross(const ExtRat& a, const ExtRat& b);

ContFrac cf_from_rat(const ExtRat& x);
ExtRat rat_from_cf(const ContFrac& cf);
// Rewrites a trailing quotient 1 into the previous one; [0;1] becomes [1].
ContFrac canonicalize(ContFrac cf);

// Level of x in the Stern-Brocot tree, the sum of its partial quotients.
// The ancestors 0/1 and 1/0 are not tree vertices and report depth 0.
Integer depth(const ExtRat& x);

// Level of x in the Farey tree, x in [0, 1]. Zero and one are the Farey
// ancestors and report rank 0.
Integer rank(const ExtRat& x);

ContFrac complement_cf(const ContFrac& cf);

ExtRat phi(const ExtRat& x);
ExtRat phi_inv(const ExtRat& y);

// Floor and fractional part of a finite x.
Integer floor_of(const ExtRat& x);
ExtRat frac_of(const ExtRat& x);

// Reciprocal on J with 1/0 = inf and 1/inf = 0.
ExtRat reciprocal(const ExtRat& x);

}  // namespace qorder
