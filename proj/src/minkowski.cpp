#include "qorder/minkowski.hpp"

#include "qorder/kernels.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace qorder {

namespace {

std::uint64_t checked_exponent(const Integer& e) {
  if (e > kMaxDyadicExponent)
    throw std::out_of_range("binary exponent " + e.get_str() + " exceeds the 2^16 cap");
  return e.get_ui();
}

// Run lengths of an eventually-constant bit sequence whose first run carries
// the symbol `first`. Returns the finite runs preceding the infinite one.
std::vector<Integer> decode_runs(const BinaryWord& w, int first) {
  std::vector<Integer> runs;
  int symbol = first;
  Integer length = 0;
  for (int b : w.bits) {
    if (b == symbol) {
      ++length;
    } else {
      runs.push_back(length);
      symbol = b;
      length = 1;
    }
  }
  const int tail = w.ones_tail ? 1 : 0;
  if (tail != symbol) runs.push_back(length);
  return runs;
}

ExtRat rho_from_runs(const std::vector<Integer>& runs) {
  // 0.1^{a0} 0^{a1} 1^{a2} ... ; runs are a0..am, the next run is infinite.
  if (runs.empty()) return ExtRat::infinity();
  return rat_from_cf(ContFrac{runs});
}

ExtRat qmark_from_runs(const std::vector<Integer>& runs) {
  // 0.0^{a1-1} 1^{a2} 0^{a3} ...
  if (runs.empty()) return ExtRat(0, 1);
  ContFrac cf;
  cf.terms.push_back(0);
  cf.terms.push_back(runs[0] + 1);
  cf.terms.insert(cf.terms.end(), runs.begin() + 1, runs.end());
  return rat_from_cf(cf);
}

template <typename Decode>
ExtRat invert_both_readings(const Dyadic& d, int first, Decode decode) {
  if (sgn(d.num()) < 0 || d > Dyadic(1, 0)) throw std::domain_error("inverse needs a dyadic in [0,1], got " + d.str());
  std::optional<ExtRat> from_zeros, from_ones;
  if (d < Dyadic(1, 0)) from_zeros = decode(decode_runs(BinaryWord::zeros_reading(d), first));
  if (sgn(d.num()) > 0) from_ones = decode(decode_runs(BinaryWord::ones_reading(d), first));
  if (from_zeros && from_ones && !(*from_zeros == *from_ones))
    throw std::logic_error("binary readings of " + d.str() + " decode to different rationals");
  return from_zeros ? *from_zeros : *from_ones;
}

}  // namespace

Dyadic rho(const ExtRat& x) {
  if (x.is_zero()) return Dyadic(0, 0);
  if (x.is_infinite()) return Dyadic(1, 0);
  const ContFrac cf = cf_from_rat(x);
  Dyadic sum;
  Integer partial = 0;
  for (std::size_t k = 0; k < cf.terms.size(); ++k) {
    partial += cf.terms[k];
    const Dyadic term(1, checked_exponent(partial));
    sum = (k % 2 == 0) ? sum + term : sum - term;
  }
  return Dyadic(1, 0) - sum;
}

Dyadic qmark(const ExtRat& x) {
  if (x > ExtRat(1, 1)) throw std::domain_error("? is defined on [0,1], got " + x.str());
  if (x.is_zero()) return Dyadic(0, 0);
  if (x == ExtRat(1, 1)) return Dyadic(1, 0);
  const ContFrac cf = cf_from_rat(x);
  Dyadic sum;
  Integer partial = 0;
  for (std::size_t k = 1; k < cf.terms.size(); ++k) {
    partial += cf.terms[k];
    const Dyadic term(1, checked_exponent(partial) - 1);  // 2 * 2^{-partial}
    sum = (k % 2 == 1) ? sum + term : sum - term;
  }
  return sum;
}

ExtRat qmark_inv(const Dyadic& d) { return invert_both_readings(d, 0, qmark_from_runs); }

ExtRat rho_inv(const Dyadic& d) { return invert_both_readings(d, 1, rho_from_runs); }

Enclosure qmark_enclosure(const ContFrac& prefix) {
  if (prefix.is_infinity()) throw std::domain_error("empty continued fraction prefix");
  ContFrac bumped = prefix;
  bumped.terms.back() += 1;
  const ExtRat a = rat_from_cf(prefix);
  const ExtRat b = rat_from_cf(bumped);
  const bool extended = !(prefix.terms.size() >= 2 && sgn(prefix.terms[0]) == 0);
  Dyadic va = extended ? rho(a) : qmark(a);
  Dyadic vb = extended ? rho(b) : qmark(b);
  if (vb < va) std::swap(va, vb);
  return {std::move(va), std::move(vb), extended};
}

Rational distribution_estimate(const TreeSpec& spec, unsigned k, const ExtRat& x, const Exec& exec) {
  const std::uint64_t count = count_over_levels(spec, k, [&x](const ExtRat& y) { return y <= x; }, exec);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
  Rational r(Integer(std::to_string(count)), scale);
  r.canonicalize();
  return r;
}

Rational distribution_reference(const TreeSpec& spec, const ExtRat& x) {
  switch (spec.kind) {
    case TreeKind::SB:
      return rho(x).to_rational();
    case TreeKind::Farey:
      return qmark(x).to_rational();
    case TreeKind::Dyadic:
      return x.to_rational();
  }
  throw std::logic_error("unknown tree kind");
}

Complex stieltjes_mean(const Observable& f, unsigned k, TreeKind kind, const Exec& exec) {
  if (kind == TreeKind::Dyadic) throw std::invalid_argument("Stieltjes means are taken over the SB or Farey tree");
  const Complex sum = sum_over_levels(TreeSpec{kind, false}, k, [&f](const ExtRat& x) { return f(x); }, exec);
  return sum / std::ldexp(1.0, static_cast<int>(k));
}

}  // namespace qorder
