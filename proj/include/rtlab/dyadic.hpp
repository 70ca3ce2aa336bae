#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rtlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact number of the form numerator / 2^exponent.
///
/// Kept canonical: the numerator is odd, or zero with exponent 0. Clique
/// weights and weighted clique counts live here, so equality is exact.
class DyadicRational {
public:
  DyadicRational() = default;
  DyadicRational(long long value) : num_(value) {}  // NOLINT(implicit)
  DyadicRational(BigInt numerator, std::uint32_t exponent);

  /// (1/2)^k
  static DyadicRational half_pow(std::uint32_t k);
  /// Parses "3", "-5/8", "81/4"; the denominator must be a power of two.
  static DyadicRational parse(std::string_view text);

  const BigInt& numerator() const noexcept { return num_; }
  std::uint32_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  DyadicRational& operator+=(const DyadicRational& rhs);
  DyadicRational& operator-=(const DyadicRational& rhs);
  DyadicRational& operator*=(const DyadicRational& rhs);
  DyadicRational operator-() const { return {-num_, exp_}; }

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  Rational to_rational() const;
  double to_double() const;
  long double to_long_double() const;
  /// "p/q" in lowest terms, or "p" for integers.
  std::string to_string() const;

private:
  void normalize();

  BigInt num_ = 0;
  std::uint32_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& d);

/// "p/q" or "p" for an exact rational.
std::string rational_string(const Rational& r);
/// Parses "p/q", "p", or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);
long double to_long_double(const Rational& r);

}  // namespace rtlab
