#pragma once

// {L,R} words and SL(2,Z) matrices coding the positive rationals, the
// infinite coding pi(x), and the word-reversal permutation x -> hat(x).

#include "qorder/exact_core.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace qorder {

enum class Letter : char { L = 'L', R = 'R' };

constexpr Letter opposite(Letter l) { return l == Letter::L ? Letter::R : Letter::L; }

struct LRWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::string str() const;
  static LRWord parse(std::string_view text);

  friend bool operator==(const LRWord&, const LRWord&) = default;
};

// Matrix (a b; c d). Columns read as (right parent, left parent): the matrix
// (p' p; q' q) stands for (p + p')/(q + q').
struct Mat2 {
  Integer a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  static Mat2 L() { return {1, 0, 1, 1}; }
  static Mat2 R() { return {1, 1, 0, 1}; }
  static Mat2 U() { return {0, 1, 1, 0}; }

  Integer det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  Mat2& operator*=(Letter l);  // right multiplication by a generator

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

LRWord word_from_cf(const ContFrac& cf);
LRWord word_of(const ExtRat& x);
Mat2 matrix_from_word(const LRWord& w);
ExtRat rat_from_matrix(const Mat2& m);

struct Parents {
  ExtRat left;
  ExtRat right;
};
Parents parents(const ExtRat& x);

Mat2 conjugate_by_U(const Mat2& m);
LRWord swap_letters(const LRWord& w);
ExtRat reciprocal_code(const ExtRat& x);

ExtRat hat(const ExtRat& x);

struct Children {
  ContFrac left;
  ContFrac right;
};
Children children_cf(const ContFrac& cf);

enum class Tail { none, L_forever, R_forever };

struct InfiniteCode {
  LRWord prefix;
  Tail tail = Tail::none;

  // Letter at position i; only meaningful when i < prefix size or tail != none.
  Letter at(std::size_t i) const;
  std::string str() const;

  friend bool operator==(const InfiniteCode&, const InfiniteCode&) = default;
};

// pi(x) for x in Q+ together with 0 and infinity.
InfiniteCode pi_code(const ExtRat& x);
// Code of an irrational known only through a finite CF prefix; tail none.
InfiniteCode pi_code_prefix(const ContFrac& prefix);

enum class CodeOrder { less, equal, greater, unknown };
CodeOrder code_compare(const InfiniteCode& c1, const InfiniteCode& c2);

}  // namespace qorder
