#include "qorder/interval_maps.hpp"

#include "qorder/lr_coding.hpp"
#include "qorder/minkowski.hpp"
#include "qorder/parallel.hpp"

#include <stdexcept>
#include <string>

namespace qorder {

namespace {

const ExtRat kOne(1, 1);
const ExtRat kHalf(1, 2);

ExtRat from(const Rational& r) { return ExtRat::from_rational(r); }

Rational pow2_inv(std::uint64_t e) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, e);
  return Rational(Integer(1), d);
}

std::uint64_t bit_length(const Integer& n) { return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2); }

void require_unit(MapId m, const ExtRat& x) {
  if (x > kOne) throw std::domain_error(map_name(m) + " is defined on [0,1], got " + x.str());
}

// floor((q - 1) / p) for x = p/q > 0: the n with 1/(n+1) <= x < 1/n.
Integer reciprocal_band(const ExtRat& x) {
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), Integer(x.den() - 1).get_mpz_t(), x.num().get_mpz_t());
  return n;
}

ExtRat apply_R(const ExtRat& x) {
  if (x.is_infinite()) return ExtRat(0, 1);
  const Integer k = floor_of(x);
  const Rational r = x.to_rational();
  return from(1 / (1 - (r - k) + k));
}

// Piece n >= 1 of S on [(n-1)/n, n/(n+1)).
Rational s_piece(const Rational& y, const Integer& n) { return (1 - y) / (2 * n - (2 * n + 1) * y); }

ExtRat apply_S(const ExtRat& x) {
  require_unit(MapId::S, x);
  if (x == kOne) return ExtRat(0, 1);
  const Rational y = x.to_rational();
  const Rational t = y / (1 - y);
  Integer k = floor_of(ExtRat::from_rational(t));
  const Rational frac = t - k;
  return from(1 / (2 - frac + k));
}

// Piece n >= 0 of T on [1 - 2^-n, 1 - 2^-(n+1)).
ExtRat t_piece(const Rational& y, std::uint64_t n) { return from(y + 3 * pow2_inv(n + 1) - 1); }

ExtRat apply_T(const ExtRat& x) {
  require_unit(MapId::T, x);
  if (x == kOne) return ExtRat(0, 1);
  const Rational y = x.to_rational();
  const Rational u = 1 - y;
  const Integer f = u.get_den() / u.get_num();  // floor(1/u) >= 1
  return t_piece(y, bit_length(f) - 1);
}

ExtRat apply_G(const ExtRat& x) {
  if (x.is_infinite()) return x;
  const Rational y = x.to_rational();
  return y < 1 ? from(y / (1 - y)) : from(y - 1);
}

ExtRat apply_F(const ExtRat& x) {
  require_unit(MapId::F, x);
  const Rational y = x.to_rational();
  return y < Rational(1, 2) ? from(y / (1 - y)) : from(2 - 1 / y);
}

ExtRat apply_D(const ExtRat& x) {
  require_unit(MapId::D, x);
  if (x == kOne) return x;
  const Rational y = 2 * x.to_rational();
  return y < 1 ? from(y) : from(y - 1);
}

}  // namespace

std::string map_name(MapId m) {
  switch (m) {
    case MapId::R: return "R";
    case MapId::S: return "S";
    case MapId::T: return "T";
    case MapId::G: return "G";
    case MapId::F: return "F";
    case MapId::D: return "D";
  }
  return "?";
}

MapId parse_map(std::string_view name) {
  if (name == "R") return MapId::R;
  if (name == "S") return MapId::S;
  if (name == "T") return MapId::T;
  if (name == "G") return MapId::G;
  if (name == "F") return MapId::F;
  if (name == "D") return MapId::D;
  throw std::invalid_argument("unknown map '" + std::string(name) + "' (expected R, S, T, G, F or D)");
}

ExtRat apply(MapId m, const ExtRat& x) {
  switch (m) {
    case MapId::R: return apply_R(x);
    case MapId::S: return apply_S(x);
    case MapId::T: return apply_T(x);
    case MapId::G: return apply_G(x);
    case MapId::F: return apply_F(x);
    case MapId::D: return apply_D(x);
  }
  throw std::logic_error("unknown map");
}

ExtRat apply_inverse(MapId m, const ExtRat& x) {
  switch (m) {
    case MapId::R: {
      if (x.is_infinite()) throw std::domain_error("R^-1 is undefined at inf");
      if (x.is_zero()) return ExtRat::infinity();
      const Integer n = reciprocal_band(x);
      return from(2 * n + 1 - 1 / x.to_rational());
    }
    case MapId::S: {
      require_unit(m, x);
      if (x == kOne) throw std::domain_error("S^-1 is undefined at 1");
      if (x.is_zero()) return kOne;
      const Integer n = reciprocal_band(x);
      const Rational y = x.to_rational();
      return from((2 * n * y - 1) / ((2 * n + 1) * y - 1));
    }
    case MapId::T: {
      require_unit(m, x);
      if (x == kOne) throw std::domain_error("T^-1 is undefined at 1");
      if (x.is_zero()) return kOne;
      const Integer band = reciprocal_band(x);  // 2^n <= band < 2^(n+1)
      const std::uint64_t n = bit_length(band) - 1;
      return from(x.to_rational() - 3 * pow2_inv(n + 1) + 1);
    }
    default:
      throw std::invalid_argument(map_name(m) + " is two-to-one; use inverse_branches");
  }
}

std::pair<ExtRat, ExtRat> inverse_branches(MapId m, const ExtRat& x) {
  switch (m) {
    case MapId::G:
      if (x.is_infinite()) return {kOne, x};
      return {ExtRat(x.num(), x.num() + x.den()), ExtRat(x.num() + x.den(), x.den())};
    case MapId::F:
      require_unit(m, x);
      return {ExtRat(x.num(), x.num() + x.den()), ExtRat(x.den(), 2 * x.den() - x.num())};
    case MapId::D:
      require_unit(m, x);
      return {ExtRat(x.num(), 2 * x.den()), ExtRat(x.num() + x.den(), 2 * x.den())};
    default:
      throw std::invalid_argument(map_name(m) + " is invertible; use apply_inverse");
  }
}

std::vector<ExtRat> orbit(MapId m, const ExtRat& start, std::uint64_t count) {
  if (count > kMaxOrbit)
    throw std::out_of_range("orbit length " + std::to_string(count) + " exceeds the cap 2^24");
  std::vector<ExtRat> out;
  out.reserve(count);
  ExtRat x = start;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > 0) x = apply(m, x);
    out.push_back(x);
  }
  return out;
}

std::string diagram_name(Diagram d) {
  switch (d) {
    case Diagram::S_vs_phi_R_phiinv: return "S=phi.R.phi^-1";
    case Diagram::T_qmark_vs_qmark_S: return "T.?=?.S";
    case Diagram::F_phi_vs_phi_G: return "F.phi=phi.G";
    case Diagram::D_qmark_vs_qmark_F: return "D.?=?.F";
  }
  return "?";
}

Rational conjugacy_residual(Diagram d, const ExtRat& x) {
  switch (d) {
    case Diagram::S_vs_phi_R_phiinv:
      return apply(MapId::S, x).to_rational() - phi(apply(MapId::R, phi_inv(x))).to_rational();
    case Diagram::T_qmark_vs_qmark_S:
      return apply(MapId::T, qmark(x).to_extrat()).to_rational() - qmark(apply(MapId::S, x)).to_rational();
    case Diagram::F_phi_vs_phi_G:
      return apply(MapId::F, phi(x)).to_rational() - phi(apply(MapId::G, x)).to_rational();
    case Diagram::D_qmark_vs_qmark_F:
      return apply(MapId::D, qmark(x).to_extrat()).to_rational() - qmark(apply(MapId::F, x)).to_rational();
  }
  throw std::logic_error("unknown diagram");
}

ContFrac s_on_cf(const ContFrac& input) {
  ContFrac cf = canonicalize(input);
  const ExtRat x = rat_from_cf(cf);
  require_unit(MapId::S, x);
  if (x.is_zero()) return ContFrac{{0, 2}};
  if (x == kOne) return ContFrac{{0}};
  if (cf.terms.size() == 2 && cf.terms[1] == 2) cf.terms = {0, 1, 1};
  const auto& a = cf.terms;  // a[0] = 0
  ContFrac out{{0}};
  if (a[1] == 1) {
    out.terms.push_back(a[2] + 1);
    out.terms.push_back(1);
    if (a.size() > 3) {
      out.terms.push_back(a[3] - 1);
      out.terms.insert(out.terms.end(), a.begin() + 4, a.end());
    }
  } else {
    out.terms.push_back(1);
    out.terms.push_back(1);
    out.terms.push_back(a[1] - 2);
    out.terms.insert(out.terms.end(), a.begin() + 2, a.end());
  }
  // Zero quotients merge their neighbours; evaluate and re-expand.
  return cf_from_rat(rat_from_cf(out));
}

LRWord g_retrace(const ExtRat& x) {
  if (x.is_zero() || x.is_infinite()) throw std::domain_error("retrace needs a vertex of the tree, got " + x.str());
  if (depth(x) > kMaxOrbit) throw std::out_of_range("retrace length exceeds the cap 2^24");
  LRWord w;
  ExtRat y = x;
  while (!(y == kOne)) {
    w.letters.push_back(y < kOne ? Letter::L : Letter::R);
    y = apply(MapId::G, y);
  }
  return w;
}

StackInterval stack_interval(StackFamily family, std::uint64_t i, unsigned n) {
  if (n > 20) throw std::out_of_range("stack stage " + std::to_string(n) + " exceeds the cap 20");
  const std::uint64_t levels = std::uint64_t{1} << n;
  if (i < 1 || i > levels)
    throw std::out_of_range("stack index " + std::to_string(i) + " outside [1, 2^" + std::to_string(n) + "]");
  // T^(i-1)(0) carries the digits of i-1 least significant first.
  std::uint64_t reversed = 0;
  for (unsigned b = 0; b < n; ++b)
    if ((i - 1) >> b & 1) reversed |= std::uint64_t{1} << (n - 1 - b);
  const Dyadic left(Integer(std::to_string(reversed)), n);
  const Dyadic right = left + Dyadic(1, n);
  StackInterval s{family, i, n, left.to_extrat(), right.to_extrat()};
  if (family == StackFamily::A) return s;
  s.left = qmark_inv(left);
  s.right = qmark_inv(right);
  if (i < levels) {
    const StackInterval next = stack_interval(StackFamily::A, i + 1, n);
    if (!(apply(MapId::S, s.left) == qmark_inv(Dyadic::from_extrat(next.left))) ||
        !(left_limit(MapId::S, s.right) == qmark_inv(Dyadic::from_extrat(next.right))))
      throw std::logic_error("S does not carry B(" + std::to_string(i) + "," + std::to_string(n) + ") onto its successor");
  }
  if (family == StackFamily::C) {
    s.left = phi_inv(s.left);
    s.right = phi_inv(s.right);
  }
  return s;
}

ExtRat left_limit(MapId m, const ExtRat& x) {
  require_unit(m, x);
  if (x.is_zero()) throw std::domain_error("no points left of 0");
  if (x == kOne) return ExtRat(0, 1);
  const Rational y = x.to_rational();
  switch (m) {
    case MapId::S: {
      // Largest k < y/(1-y) selects the piece [k/(k+1), (k+1)/(k+2)).
      const Rational t = y / (1 - y);
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      return from(s_piece(y, c));
    }
    case MapId::T: {
      const ExtRat u = from(1 - y);
      return t_piece(y, bit_length(reciprocal_band(u)) - 1);
    }
    default:
      throw std::invalid_argument("left limits are provided for S and T only");
  }
}

std::uint64_t odometer_value(const Dyadic& x, unsigned m) {
  if (m > 62) throw std::out_of_range("digit count exceeds 62");
  const auto d = x.digits(m);
  std::uint64_t v = 0;
  for (unsigned k = 0; k < m; ++k) v |= static_cast<std::uint64_t>(d[k]) << k;
  return v;
}

std::uint64_t odometer_value(const ExtRat& x, unsigned m) {
  if (m > 62) throw std::out_of_range("digit count exceeds 62");
  if (!(x < kOne)) throw std::domain_error("binary digits need x in [0,1), got " + x.str());
  Integer r = x.num();
  const Integer& q = x.den();
  std::uint64_t v = 0;
  for (unsigned k = 0; k < m; ++k) {
    r *= 2;
    if (r >= q) {
      v |= std::uint64_t{1} << k;
      r -= q;
    }
  }
  return v;
}

EigenCheck eigenfunction_check(unsigned m, const ExtRat& x, MapId map) {
  if (m < 1 || m > 12) throw std::out_of_range("eigenfunction order must lie in [1, 12]");
  if (map != MapId::T && map != MapId::S) throw std::invalid_argument("eigenfunctions are checked for T and S");
  const ExtRat y = apply(map, x);
  EigenCheck c;
  if (map == MapId::T) {
    c.v_before = odometer_value(x, m);
    c.v_after = odometer_value(y, m);
  } else {
    c.v_before = odometer_value(qmark(x), m);
    c.v_after = odometer_value(qmark(y), m);
  }
  const std::uint64_t mod = std::uint64_t{1} << m;
  c.exact_ok = c.v_after == (c.v_before + 1) % mod;
  const auto f = [mod](std::uint64_t v) { return unit_phase(1, ExtRat(static_cast<long>(v), static_cast<long>(mod))); };
  c.mapped = f(c.v_after);
  c.rotated = unit_phase(1, ExtRat(1, static_cast<long>(mod))) * f(c.v_before);
  return c;
}

std::vector<Complex> ergodic_fourier(const std::vector<long>& ns, const ExtRat& start, std::uint64_t iters,
                                     MapId map) {
  if (map != MapId::R && map != MapId::S) throw std::invalid_argument("ergodic means are taken along R or S");
  if (iters == 0) throw std::invalid_argument("ergodic mean needs at least one iterate");
  if (iters > kMaxOrbit) throw std::out_of_range("iteration count exceeds the cap 2^24");
  if (start.is_infinite()) throw std::domain_error("ergodic start must be finite");
  std::vector<ComplexSum> sums(ns.size());
  ExtRat x = start;
  for (std::uint64_t k = 0; k < iters; ++k) {
    if (k > 0) x = apply(map, x);
    for (std::size_t j = 0; j < ns.size(); ++j) sums[j].add(unit_phase(ns[j], x));
  }
  std::vector<Complex> out;
  for (const auto& s : sums) out.push_back(s.value() / static_cast<double>(iters));
  return out;
}

Complex ergodic_fourier(long n, const ExtRat& start, std::uint64_t iters, MapId map) {
  return ergodic_fourier(std::vector<long>{n}, start, iters, map).front();
}

}  // namespace qorder
