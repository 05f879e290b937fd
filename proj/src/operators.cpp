#include "qorder/operators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qorder {

namespace {

Rational rat_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (sgn(base) == 0) {
    if (e < 0) throw std::domain_error("zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

void require_interior(const TransferKind& kind, const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("transfer operators are evaluated at finite points");
  if (kind.generator != Generator::G && x > ExtRat(1, 1))
    throw std::domain_error("dyadic and Farey transfer operators act on [0,1], got " + x.str());
}

long exact_q(const TransferKind& kind) {
  if (!kind.integral_q()) throw std::invalid_argument("exact transfer needs an integer q");
  return static_cast<long>(kind.q);
}

}  // namespace

bool TransferKind::integral_q() const { return std::floor(q) == q && std::abs(q) <= 1e6; }

Complex transfer_apply(const TransferKind& kind, const Observable& f, const ExtRat& x) {
  if (f.has_exact() && kind.integral_q()) return {transfer_apply_exact(kind, f, x).get_d(), 0.0};
  require_interior(kind, x);
  const double y = x.to_double();
  switch (kind.generator) {
    case Generator::G:
      return std::pow(1.0 + y, -2.0 * kind.q) * f(ExtRat(x.num(), x.num() + x.den())) +
             f(ExtRat(x.num() + x.den(), x.den()));
    case Generator::dyadic:
      return std::pow(2.0, -kind.q) * (f(ExtRat(x.num(), 2 * x.den())) + f(ExtRat(x.num() + x.den(), 2 * x.den())));
    case Generator::Farey:
      return std::pow(1.0 + y, -2.0 * kind.q) * f(ExtRat(x.num(), x.num() + x.den())) +
             std::pow(2.0 - y, -2.0 * kind.q) * f(ExtRat(x.den(), 2 * x.den() - x.num()));
  }
  throw std::logic_error("unknown generator");
}

Rational transfer_apply_exact(const TransferKind& kind, const Observable& f, const ExtRat& x) {
  require_interior(kind, x);
  const long q = exact_q(kind);
  const Rational y = x.to_rational();
  switch (kind.generator) {
    case Generator::G:
      return rat_pow(1 + y, -2 * q) * f.exact_at(ExtRat(x.num(), x.num() + x.den())) +
             f.exact_at(ExtRat(x.num() + x.den(), x.den()));
    case Generator::dyadic:
      return rat_pow(Rational(2), -q) *
             (f.exact_at(ExtRat(x.num(), 2 * x.den())) + f.exact_at(ExtRat(x.num() + x.den(), 2 * x.den())));
    case Generator::Farey:
      return rat_pow(1 + y, -2 * q) * f.exact_at(ExtRat(x.num(), x.num() + x.den())) +
             rat_pow(2 - y, -2 * q) * f.exact_at(ExtRat(x.den(), 2 * x.den() - x.num()));
  }
  throw std::logic_error("unknown generator");
}

double transfer_apply(const TransferKind& kind, const std::function<double(double)>& f, double x) {
  switch (kind.generator) {
    case Generator::G:
      return std::pow(1.0 + x, -2.0 * kind.q) * f(x / (1.0 + x)) + f(x + 1.0);
    case Generator::dyadic:
      return std::pow(2.0, -kind.q) * (f(x / 2.0) + f(x / 2.0 + 0.5));
    case Generator::Farey:
      return std::pow(1.0 + x, -2.0 * kind.q) * f(x / (1.0 + x)) + std::pow(2.0 - x, -2.0 * kind.q) * f(1.0 / (2.0 - x));
  }
  throw std::logic_error("unknown generator");
}

double lewis_zagier_residual(const std::function<double(double)>& f, double q, double x) {
  return f(x) - f(x + 1.0) - std::pow(1.0 + x, -2.0 * q) * f(x / (1.0 + x));
}

Rational lewis_zagier_residual_exact(const Observable& f, long q, const ExtRat& x) {
  if (x.is_infinite()) throw std::domain_error("the three-term equation is evaluated at finite points");
  const Rational y = x.to_rational();
  return f.exact_at(x) - f.exact_at(ExtRat(x.num() + x.den(), x.den())) -
         rat_pow(1 + y, -2 * q) * f.exact_at(ExtRat(x.num(), x.num() + x.den()));
}

std::string markov_name(MarkovKind k) { return k == MarkovKind::MC0 ? "MC0" : "MC1"; }

std::pair<Rational, Rational> transition_probs(MarkovKind kind, const ExtRat& x) {
  if (kind == MarkovKind::MC0) return {Rational(1, 2), Rational(1, 2)};
  if (x.is_infinite()) return {Rational(0), Rational(1)};
  Rational p0(x.den(), x.num() + x.den());
  Rational p1(x.num(), x.num() + x.den());
  p0.canonicalize();
  p1.canonicalize();
  return {p0, p1};
}

ExtRat branch(int s, const ExtRat& x) {
  if (x.is_infinite()) return s == 0 ? ExtRat(1, 1) : x;
  // Both branches keep the fraction reduced.
  return s == 0 ? ExtRat::coprime(x.num(), x.num() + x.den()) : ExtRat::coprime(x.num() + x.den(), x.den());
}

Complex markov_apply(MarkovKind kind, const Observable& f, const ExtRat& x) {
  const auto [p0, p1] = transition_probs(kind, x);
  Complex v{0.0, 0.0};
  if (sgn(p0) != 0) v += p0.get_d() * f(branch(0, x));
  if (sgn(p1) != 0) v += p1.get_d() * f(branch(1, x));
  return v;
}

Rational markov_apply_exact(MarkovKind kind, const Observable& f, const ExtRat& x) {
  const auto [p0, p1] = transition_probs(kind, x);
  Rational v(0);
  if (sgn(p0) != 0) v += p0 * f.exact_at(branch(0, x));
  if (sgn(p1) != 0) v += p1 * f.exact_at(branch(1, x));
  return v;
}

Observable markov_observable(MarkovKind kind, const Observable& f) {
  const std::string name = "P" + std::string(kind == MarkovKind::MC0 ? "0" : "1") + "(" + f.name() + ")";
  if (f.has_exact())
    return Observable::exact(name, [kind, f](const ExtRat& x) { return markov_apply_exact(kind, f, x); });
  return Observable::numeric(name, [kind, f](const ExtRat& x) { return markov_apply(kind, f, x); });
}

namespace {

void check_power(unsigned n) {
  if (n > kMaxPower) throw std::out_of_range("operator power " + std::to_string(n) + " exceeds the cap 24");
}

void expand(MarkovKind kind, const Observable& f, const ExtRat& x, const Rational& weight, unsigned remaining,
            ComplexSum& sum) {
  if (remaining == 0) {
    sum.add(weight.get_d() * f(x));
    return;
  }
  const auto [p0, p1] = transition_probs(kind, x);
  if (sgn(p0) != 0) expand(kind, f, branch(0, x), weight * p0, remaining - 1, sum);
  if (sgn(p1) != 0) expand(kind, f, branch(1, x), weight * p1, remaining - 1, sum);
}

Rational expand_exact(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned remaining) {
  if (remaining == 0) return f.exact_at(x);
  const auto [p0, p1] = transition_probs(kind, x);
  Rational v(0);
  if (sgn(p0) != 0) v += p0 * expand_exact(kind, f, branch(0, x), remaining - 1);
  if (sgn(p1) != 0) v += p1 * expand_exact(kind, f, branch(1, x), remaining - 1);
  return v;
}

constexpr unsigned kPrefixDepth = 10;

}  // namespace

Complex markov_power(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n, const Exec& exec) {
  check_power(n);
  const unsigned d = std::min(n, kPrefixDepth);
  const auto partials = map_chunks<ComplexSum>(exec, std::int64_t{1} << d, [&](std::int64_t c) {
    ComplexSum s;
    ExtRat state = x;
    Rational weight(1);
    for (unsigned k = 0; k < d; ++k) {
      const int letter = static_cast<int>((c >> (d - 1 - k)) & 1);
      const auto probs = transition_probs(kind, state);
      const Rational& p = letter == 0 ? probs.first : probs.second;
      if (sgn(p) == 0) return s;
      weight *= p;
      state = branch(letter, state);
    }
    expand(kind, f, state, weight, n - d, s);
    return s;
  });
  ComplexSum total;
  for (const auto& p : partials) total.add(p);
  return total.value();
}

Rational markov_power_exact(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n) {
  check_power(n);
  return expand_exact(kind, f, x, n);
}

Complex averaging_apply(const Observable& f, const ExtRat& x) { return 0.5 * (f(x) + f(reciprocal(x))); }

Observable averaging_observable(const Observable& f) {
  const std::string name = "A(" + f.name() + ")";
  if (f.has_exact())
    return Observable::exact(name, [f](const ExtRat& x) { return Rational((f.exact_at(x) + f.exact_at(reciprocal(x))) / 2); });
  return Observable::numeric(name, [f](const ExtRat& x) { return averaging_apply(f, x); });
}

Complex commutator_residual(MarkovKind kind, const Observable& f, const ExtRat& x) {
  return markov_apply(kind, averaging_observable(f), x) - averaging_apply(markov_observable(kind, f), x);
}

Rational commutator_residual_exact(MarkovKind kind, const Observable& f, const ExtRat& x) {
  return markov_apply_exact(kind, averaging_observable(f), x) -
         averaging_observable(markov_observable(kind, f)).exact_at(x);
}

namespace {

template <typename Value, typename Eval>
std::pair<Value, Rational> harmonic_terms(MarkovKind kind, const ExtRat& x, unsigned N, Eval eval) {
  if (x.is_infinite()) throw std::domain_error("the harmonic series is taken at finite x");
  if (N < 1) throw std::invalid_argument("harmonic series needs N >= 1");
  const Rational y = x.to_rational();
  Value sum{};
  for (unsigned k = 0; k < N; ++k) {
    Rational w;
    if (kind == MarkovKind::MC0) {
      w = Rational(1);
      mpz_mul_2exp(w.get_den_mpz_t(), w.get_den_mpz_t(), k + 1);
    } else {
      w = k == 0 ? Rational(1 / (y + 1)) : Rational(y / ((y + k) * (y + k + 1)));
    }
    if (sgn(w) == 0) continue;
    const ExtRat shifted = ExtRat::from_rational(y + k);
    eval(sum, w, branch(0, shifted));
  }
  Rational tail;
  if (kind == MarkovKind::MC0) {
    tail = Rational(1);
    mpz_mul_2exp(tail.get_den_mpz_t(), tail.get_den_mpz_t(), N);
  } else {
    tail = y / (y + N);
  }
  return {sum, tail};
}

}  // namespace

HarmonicPartial harmonic_series_partial(MarkovKind kind, const Observable& h, const ExtRat& x, unsigned N) {
  auto [sum, tail] = harmonic_terms<ComplexSum>(
      kind, x, N, [&h](ComplexSum& s, const Rational& w, const ExtRat& z) { s.add(w.get_d() * h(z)); });
  return {sum.value(), tail};
}

Rational harmonic_series_partial_exact(MarkovKind kind, const Observable& h, const ExtRat& x, unsigned N) {
  return harmonic_terms<Rational>(kind, x, N,
                                  [&h](Rational& s, const Rational& w, const ExtRat& z) { s += w * h.exact_at(z); })
      .first;
}

Rational h1(const ExtRat& x) { return (x.is_zero() || x.is_infinite()) ? Rational(1) : Rational(0); }

NuBranchCheck nu_branch_check(const ExtRat& a, const ExtRat& b) {
  if (a.is_zero() || b.is_infinite() || !(a < b)) throw std::domain_error("need 0 < a < b < inf");
  const Rational ra = a.to_rational(), rb = b.to_rational();
  // Left sides: dx/x over the image intervals. Right sides: p(s,x) dx/x over (a, b).
  const Rational lhs0 = branch(0, b).to_rational() / branch(0, a).to_rational();
  const Rational rhs0 = (rb / (rb + 1)) / (ra / (ra + 1));
  const Rational lhs1 = branch(1, b).to_rational() / branch(1, a).to_rational();
  const Rational rhs1 = (rb + 1) / (ra + 1);
  NuBranchCheck c;
  c.exact_ok = lhs0 == rhs0 && lhs1 == rhs1;

  using boost::math::quadrature::gauss_kronrod;
  const double da = ra.get_d(), db = rb.get_d();
  const auto integrate = [](auto fn, double lo, double hi) {
    return gauss_kronrod<double, 61>::integrate(fn, lo, hi, 15, 1e-13);
  };
  const double q0 = integrate([](double t) { return 1.0 / (t * (1.0 + t)); }, da, db);
  const double q1 = integrate([](double t) { return 1.0 / (1.0 + t); }, da, db);
  const double i0 = integrate([](double t) { return 1.0 / t; }, da / (1.0 + da), db / (1.0 + db));
  const double i1 = integrate([](double t) { return 1.0 / t; }, da + 1.0, db + 1.0);
  const double l0 = std::log(rhs0.get_d()), l1 = std::log(rhs1.get_d());
  const auto rel = [](double v, double ref) { return std::abs(v - ref) / std::max(1.0, std::abs(ref)); };
  c.quadrature_error = std::max({rel(q0, l0), rel(i0, l0), rel(q1, l1), rel(i1, l1)});
  return c;
}

namespace reference {

Complex markov_power(MarkovKind kind, const Observable& f, const ExtRat& x, unsigned n) {
  check_power(n);
  if (n == 0) return f(x);
  const auto [p0, p1] = transition_probs(kind, x);
  Complex v{0.0, 0.0};
  if (sgn(p0) != 0) v += p0.get_d() * reference::markov_power(kind, f, branch(0, x), n - 1);
  if (sgn(p1) != 0) v += p1.get_d() * reference::markov_power(kind, f, branch(1, x), n - 1);
  return v;
}

}  // namespace reference

}  // namespace qorder
