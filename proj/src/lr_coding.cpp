#include "qorder/lr_coding.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qorder {

namespace {

// Words are materialized letter by letter only below this length; the run
// representation handles arbitrarily large partial quotients.
constexpr unsigned long kMaxWordLength = 1ul << 24;

struct Run {
  Letter letter;
  Integer length;
};

// Runs R^{a0} L^{a1} ... with the last block shortened by one.
std::vector<Run> runs_from_cf(const ContFrac& cf) {
  const ContFrac c = canonicalize(cf);
  if (c.is_infinity() || (c.terms.size() == 1 && sgn(c.terms[0]) == 0))
    throw std::domain_error("the {L,R} coding covers Q+ only, got " + cf.str());
  std::vector<Run> runs;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    Integer len = c.terms[i];
    if (i + 1 == c.terms.size()) len -= 1;
    if (sgn(len) > 0) runs.push_back({i % 2 == 0 ? Letter::R : Letter::L, std::move(len)});
  }
  return runs;
}

Mat2 matrix_from_runs(const std::vector<Run>& runs) {
  Mat2 m;
  for (const auto& run : runs) {
    const Mat2 power = run.letter == Letter::R ? Mat2{1, run.length, 0, 1} : Mat2{1, 0, run.length, 1};
    m = m * power;
  }
  return m;
}

LRWord expand(const std::vector<Run>& runs) {
  Integer total = 0;
  for (const auto& r : runs) total += r.length;
  if (total > kMaxWordLength) throw std::out_of_range("word longer than 2^24 letters");
  LRWord w;
  w.letters.reserve(total.get_ui());
  for (const auto& r : runs) w.letters.insert(w.letters.end(), r.length.get_ui(), r.letter);
  return w;
}

}  // namespace

std::string LRWord::str() const {
  std::string s;
  s.reserve(letters.size());
  for (auto l : letters) s.push_back(static_cast<char>(l));
  return s;
}

LRWord LRWord::parse(std::string_view text) {
  LRWord w;
  for (char ch : text) {
    if (ch != 'L' && ch != 'R') throw std::invalid_argument("words are over {L,R}, got '" + std::string(text) + "'");
    w.letters.push_back(static_cast<Letter>(ch));
  }
  return w;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2& Mat2::operator*=(Letter l) {
  if (l == Letter::L) {
    a += b;
    c += d;
  } else {
    b += a;
    d += c;
  }
  return *this;
}

LRWord word_from_cf(const ContFrac& cf) { return expand(runs_from_cf(cf)); }

LRWord word_of(const ExtRat& x) { return word_from_cf(cf_from_rat(x)); }

Mat2 matrix_from_word(const LRWord& w) {
  Mat2 m;
  for (auto l : w.letters) m *= l;
  return m;
}

ExtRat rat_from_matrix(const Mat2& m) {
  if (m.det() != 1) throw std::domain_error("matrix is not unimodular");
  if (sgn(m.a) < 0 || sgn(m.b) < 0 || sgn(m.c) < 0 || sgn(m.d) < 0)
    throw std::domain_error("matrix has negative entries");
  return ExtRat::coprime(m.a + m.b, m.c + m.d);
}

Parents parents(const ExtRat& x) {
  if (x.is_zero() || x.is_infinite()) throw std::domain_error("ancestors have no parents");
  const Mat2 m = matrix_from_runs(runs_from_cf(cf_from_rat(x)));
  return {ExtRat::coprime(m.b, m.d), ExtRat::coprime(m.a, m.c)};
}

Mat2 conjugate_by_U(const Mat2& m) { return {m.d, m.c, m.b, m.a}; }

LRWord swap_letters(const LRWord& w) {
  LRWord out = w;
  for (auto& l : out.letters) l = opposite(l);
  return out;
}

ExtRat reciprocal_code(const ExtRat& x) {
  const Mat2 m = matrix_from_runs(runs_from_cf(cf_from_rat(x)));
  return rat_from_matrix(conjugate_by_U(m));
}

ExtRat hat(const ExtRat& x) {
  if (x.is_zero() || x.is_infinite()) throw std::domain_error("hat is defined on Q+ only");
  auto runs = runs_from_cf(cf_from_rat(x));
  std::reverse(runs.begin(), runs.end());
  return rat_from_matrix(matrix_from_runs(runs));
}

Children children_cf(const ContFrac& cf) {
  const ContFrac c = canonicalize(cf);
  if (c.is_infinity() || (c.terms.size() == 1 && sgn(c.terms[0]) == 0))
    throw std::domain_error("children are defined for Q+ only");
  ContFrac shorter = c;  // [.., a_n - 1, 2]
  shorter.terms.back() -= 1;
  shorter.terms.push_back(2);
  ContFrac longer = c;  // [.., a_n + 1]
  longer.terms.back() += 1;
  shorter = canonicalize(std::move(shorter));
  if (c.last_index() % 2 == 0) return {std::move(shorter), std::move(longer)};
  return {std::move(longer), std::move(shorter)};
}

Letter InfiniteCode::at(std::size_t i) const {
  if (i < prefix.size()) return prefix.letters[i];
  if (tail == Tail::L_forever) return Letter::L;
  if (tail == Tail::R_forever) return Letter::R;
  throw std::out_of_range("code has no letter at this position");
}

std::string InfiniteCode::str() const {
  std::string s = prefix.str();
  if (tail == Tail::L_forever) s += "(L)^inf";
  if (tail == Tail::R_forever) s += "(R)^inf";
  return s;
}

InfiniteCode pi_code(const ExtRat& x) {
  if (x.is_zero()) return {{}, Tail::L_forever};
  if (x.is_infinite()) return {{}, Tail::R_forever};
  const ContFrac cf = cf_from_rat(x);
  InfiniteCode code;
  std::vector<Run> runs;
  for (std::size_t i = 0; i < cf.terms.size(); ++i)
    if (sgn(cf.terms[i]) > 0) runs.push_back({i % 2 == 0 ? Letter::R : Letter::L, cf.terms[i]});
  code.prefix = expand(runs);
  code.tail = cf.last_index() % 2 == 0 ? Tail::L_forever : Tail::R_forever;
  return code;
}

InfiniteCode pi_code_prefix(const ContFrac& prefix) {
  if (prefix.is_infinity()) throw std::domain_error("empty continued fraction prefix");
  std::vector<Run> runs;
  for (std::size_t i = 0; i < prefix.terms.size(); ++i)
    if (sgn(prefix.terms[i]) > 0) runs.push_back({i % 2 == 0 ? Letter::R : Letter::L, prefix.terms[i]});
  return {expand(runs), Tail::none};
}

CodeOrder code_compare(const InfiniteCode& c1, const InfiniteCode& c2) {
  const std::size_t n = std::max(c1.prefix.size(), c2.prefix.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool has1 = i < c1.prefix.size() || c1.tail != Tail::none;
    const bool has2 = i < c2.prefix.size() || c2.tail != Tail::none;
    if (!has1 || !has2) return CodeOrder::unknown;
    const Letter l1 = c1.at(i), l2 = c2.at(i);
    if (l1 != l2) return l1 < l2 ? CodeOrder::less : CodeOrder::greater;
  }
  // Both codes are now in their tails.
  if (c1.tail == Tail::none || c2.tail == Tail::none) return CodeOrder::unknown;
  if (c1.tail == c2.tail) return CodeOrder::equal;
  return c1.tail == Tail::L_forever ? CodeOrder::less : CodeOrder::greater;
}

}  // namespace qorder
