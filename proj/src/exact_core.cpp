#include "qorder/exact_core.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qorder {

namespace {

Integer parse_natural(std::string_view text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("malformed natural number '" + std::string(text) + "'");
  return Integer(std::string(text));
}

}  // namespace

ExtRat::ExtRat(const Integer& num, const Integer& den) {
  if (sgn(num) < 0 || sgn(den) < 0)
    throw std::domain_error("ExtRat takes nonnegative numerator and denominator");
  if (sgn(num) == 0 && sgn(den) == 0) throw std::domain_error("0/0 is not an extended rational");
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  num_ = num / g;
  den_ = den / g;
}

ExtRat ExtRat::coprime(Integer num, Integer den) { return ExtRat(Trusted{}, std::move(num), std::move(den)); }

ExtRat ExtRat::from_rational(const Rational& r) {
  if (sgn(r) < 0) throw std::domain_error("negative rational " + r.get_str() + " is outside J");
  return coprime(r.get_num(), r.get_den());
}

ExtRat ExtRat::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExtRat(parse_natural(text), Integer(1));
  return ExtRat(parse_natural(text.substr(0, slash)), parse_natural(text.substr(slash + 1)));
}

Rational ExtRat::to_rational() const {
  if (is_infinite()) throw std::domain_error("infinity has no finite rational value");
  return Rational(num_, den_);
}

double ExtRat::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return Rational(num_, den_).get_d();
}

std::string ExtRat::str() const { return num_.get_str() + "/" + den_.get_str(); }

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool ContFrac::is_canonical() const {
  if (terms.empty()) return true;
  if (sgn(terms[0]) < 0) return false;
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] < 1) return false;
  return terms.size() == 1 || terms.back() > 1;
}

std::string ContFrac::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 1) out << ';';
    else if (i > 1) out << ',';
    out << terms[i].get_str();
  }
  out << ']';
  return out.str();
}

ContFrac ContFrac::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("continued fraction must look like [a0;a1,...]");
  text = text.substr(1, text.size() - 2);
  ContFrac cf;
  if (text.empty()) return cf;
  const auto semi = text.find(';');
  cf.terms.push_back(parse_natural(text.substr(0, semi)));
  if (semi == std::string_view::npos) return cf;
  text = text.substr(semi + 1);
  while (true) {
    const auto comma = text.find(',');
    cf.terms.push_back(parse_natural(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return cf;
}

ExtRat mediant(const ExtRat& a, const ExtRat& b) { return ExtRat(a.num() + b.num(), a.den() + b.den()); }

Integer cross(const ExtRat& a, const ExtRat& b) { return a.den() * b.num() - a.num() * b.den(); }

ContFrac cf_from_rat(const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("no continued fraction for 1/0");
  ContFrac cf;
  Integer p = x.num(), q = x.den();
  while (sgn(q) != 0) {
    Integer a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    cf.terms.push_back(std::move(a));
    p = std::move(q);
    q = std::move(r);
  }
  return cf;
}

ExtRat rat_from_cf(const ContFrac& cf) {
  // Convergent recursion h_n = a_n h_{n-1} + h_{n-2}; zero quotients merge
  // their neighbours, so any nonnegative sequence evaluates consistently.
  Integer h_prev = 1, h = cf.terms.empty() ? Integer(1) : cf.terms[0];
  Integer k_prev = 0, k = cf.terms.empty() ? Integer(0) : Integer(1);
  for (std::size_t i = 1; i < cf.terms.size(); ++i) {
    Integer h_next = cf.terms[i] * h + h_prev;
    Integer k_next = cf.terms[i] * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
  }
  return ExtRat(h, k);
}

ContFrac canonicalize(ContFrac cf) {
  while (cf.terms.size() >= 2 && cf.terms.back() == 1) {
    cf.terms.pop_back();
    cf.terms.back() += 1;
  }
  return cf;
}

Integer depth(const ExtRat& x) {
  if (x.is_zero() || x.is_infinite()) return 0;
  Integer sum = 0;
  for (const auto& a : cf_from_rat(x).terms) sum += a;
  return sum;
}

Integer rank(const ExtRat& x) {
  if (x > ExtRat(1, 1)) throw std::domain_error("rank is defined on [0, 1], got " + x.str());
  if (x.is_zero() || x == ExtRat(1, 1)) return 0;
  return depth(x) - 1;
}

ContFrac complement_cf(const ContFrac& cf) {
  const ExtRat x = rat_from_cf(cf);
  if (!(ExtRat(0, 1) < x && x < ExtRat(1, 1)))
    throw std::domain_error("complement_cf needs x in (0,1), got " + x.str());
  const ContFrac c = canonicalize(cf);
  ContFrac out;
  out.terms.push_back(0);
  if (c.terms[1] == 1) {
    // x = [0;1,a2,a3,...]  ->  1-x = [0;1+a2,a3,...]
    out.terms.push_back(c.terms[2] + 1);
    out.terms.insert(out.terms.end(), c.terms.begin() + 3, c.terms.end());
  } else {
    // x = [0;a1,a2,...]  ->  1-x = [0;1,a1-1,a2,...]
    out.terms.push_back(1);
    out.terms.push_back(c.terms[1] - 1);
    out.terms.insert(out.terms.end(), c.terms.begin() + 2, c.terms.end());
  }
  return canonicalize(std::move(out));
}

ExtRat phi(const ExtRat& x) {
  if (x.is_infinite()) return ExtRat(1, 1);
  return ExtRat::coprime(x.num(), x.num() + x.den());
}

ExtRat phi_inv(const ExtRat& y) {
  if (y > ExtRat(1, 1)) throw std::domain_error("phi_inv needs y in [0,1], got " + y.str());
  return ExtRat::coprime(y.num(), y.den() - y.num());
}

Integer floor_of(const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("floor of infinity");
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return f;
}

ExtRat frac_of(const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("fractional part of infinity");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  if (sgn(r) == 0) return ExtRat();
  return ExtRat::coprime(std::move(r), x.den());
}

ExtRat reciprocal(const ExtRat& x) { return ExtRat::coprime(x.den(), x.num()); }

}  // namespace qorder
