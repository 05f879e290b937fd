#pragma once

#include "qorder/exact_core.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qorder {

// Exact dyadic rational num / 2^exp with num odd unless exp = 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Integer num, std::uint64_t exp);

  static Dyadic from_extrat(const ExtRat& x);  // x must have a power-of-two denominator
  static Dyadic parse(std::string_view text);  // "k/2^s" or "p/q" with q a power of two

  const Integer& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }

  Rational to_rational() const;
  ExtRat to_extrat() const;  // requires a nonnegative value
  double to_double() const;

  // "k/2^s"
  std::string str() const;
  // Exact decimal expansion, truncated after max_digits fractional digits.
  std::string decimal(std::size_t max_digits = 40) const;

  // First m binary digits after the point of the eventually-zero expansion;
  // requires 0 <= value < 1.
  std::vector<int> digits(unsigned m) const;

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic half() const { return Dyadic(num_, exp_ + 1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.exp_ == b.exp_ && a.num_ == b.num_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  Integer num_ = 0;
  std::uint64_t exp_ = 0;
};

// A finite binary word followed by an infinite run of zeros or ones.
struct BinaryWord {
  std::vector<int> bits;
  bool ones_tail = false;

  Dyadic value() const;
  // Both readings of a dyadic in [0,1]; 0 has no ones-reading, 1 no zeros-reading.
  static BinaryWord zeros_reading(const Dyadic& d);
  static BinaryWord ones_reading(const Dyadic& d);
};

}  // namespace qorder
