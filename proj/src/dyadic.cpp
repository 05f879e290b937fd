#include "qorder/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace qorder {

namespace {

Integer pow2(std::uint64_t e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return p;
}

Integer shifted(const Integer& n, std::uint64_t by) {
  Integer out;
  mpz_mul_2exp(out.get_mpz_t(), n.get_mpz_t(), by);
  return out;
}

}  // namespace

Dyadic::Dyadic(Integer num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) { normalize(); }

void Dyadic::normalize() {
  if (sgn(num_) == 0) {
    exp_ = 0;
    return;
  }
  const std::uint64_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  const std::uint64_t drop = std::min<std::uint64_t>(tz, exp_);
  if (drop > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
    exp_ -= drop;
  }
}

Dyadic Dyadic::from_extrat(const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("infinity is not dyadic");
  const Integer& q = x.den();
  if (mpz_popcount(q.get_mpz_t()) != 1) throw std::domain_error(x.str() + " is not a dyadic rational");
  return Dyadic(x.num(), mpz_scan1(q.get_mpz_t(), 0));
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto caret = text.find("/2^");
  if (caret != std::string_view::npos) {
    const ExtRat k = ExtRat::parse(text.substr(0, caret));
    const auto e = text.substr(caret + 3);
    if (e.empty() || e.find_first_not_of("0123456789") != std::string_view::npos)
      throw std::invalid_argument("malformed dyadic exponent in '" + std::string(text) + "'");
    return Dyadic(k.num(), std::stoull(std::string(e)));
  }
  return from_extrat(ExtRat::parse(text));
}

Rational Dyadic::to_rational() const {
  Rational r(num_, pow2(exp_));
  r.canonicalize();
  return r;
}

ExtRat Dyadic::to_extrat() const { return ExtRat::from_rational(to_rational()); }

double Dyadic::to_double() const { return to_rational().get_d(); }

std::string Dyadic::str() const { return num_.get_str() + "/2^" + std::to_string(exp_); }

std::string Dyadic::decimal(std::size_t max_digits) const {
  // num/2^e = num * 5^e / 10^e
  Integer scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 5, exp_);
  scaled *= abs(num_);
  std::string digits = scaled.get_str();
  if (digits.size() <= exp_) digits.insert(0, exp_ - digits.size() + 1, '0');
  std::string whole = digits.substr(0, digits.size() - exp_);
  std::string frac = digits.substr(digits.size() - exp_);
  if (frac.size() > max_digits) frac.resize(max_digits);
  std::string out = sgn(num_) < 0 ? "-" : "";
  out += whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::vector<int> Dyadic::digits(unsigned m) const {
  if (sgn(num_) < 0 || num_ >= pow2(exp_))
    throw std::domain_error("binary digits need a value in [0,1), got " + str());
  // floor(value * 2^m), read from the most significant of m bits.
  Integer top;
  if (m >= exp_) top = shifted(num_, m - exp_);
  else mpz_fdiv_q_2exp(top.get_mpz_t(), num_.get_mpz_t(), exp_ - m);
  std::vector<int> out(m);
  for (unsigned i = 0; i < m; ++i) out[i] = mpz_tstbit(top.get_mpz_t(), m - 1 - i);
  return out;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const std::uint64_t e = std::max(exp_, o.exp_);
  return Dyadic(shifted(num_, e - exp_) + shifted(o.num_, e - o.exp_), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  const std::uint64_t e = std::max(exp_, o.exp_);
  return Dyadic(shifted(num_, e - exp_) - shifted(o.num_, e - o.exp_), e);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = sgn((a - b).num());
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic BinaryWord::value() const {
  Integer n = 0;
  for (int b : bits) n = 2 * n + b;
  Dyadic v(n, bits.size());
  if (ones_tail) v = v + Dyadic(1, bits.size());
  return v;
}

BinaryWord BinaryWord::zeros_reading(const Dyadic& d) {
  if (d >= Dyadic(1, 0)) throw std::domain_error("1 has no eventually-zero reading after the point");
  return {d.digits(static_cast<unsigned>(d.exp())), false};
}

BinaryWord BinaryWord::ones_reading(const Dyadic& d) {
  if (sgn(d.num()) == 0) throw std::domain_error("0 has no eventually-one reading");
  if (d > Dyadic(1, 0)) throw std::domain_error("value above 1");
  if (d == Dyadic(1, 0)) return {{}, true};
  BinaryWord w = zeros_reading(d);
  w.bits.back() = 0;
  w.ones_tail = true;
  return w;
}

}  // namespace qorder
