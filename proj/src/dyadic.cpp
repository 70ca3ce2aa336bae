#include "rtlab/dyadic.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace mp = boost::multiprecision;

DyadicRational::DyadicRational(BigInt numerator, std::uint32_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

DyadicRational DyadicRational::half_pow(std::uint32_t k) { return {BigInt(1), k}; }

void DyadicRational::normalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  const auto tz = static_cast<std::uint32_t>(mp::lsb(mp::abs(num_)));
  const std::uint32_t shift = tz < exp_ ? tz : exp_;
  if (shift > 0) {
    num_ >>= shift;
    exp_ -= shift;
  }
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
  if (exp_ >= rhs.exp_) {
    num_ += rhs.num_ << (exp_ - rhs.exp_);
  } else {
    num_ = (num_ << (rhs.exp_ - exp_)) + rhs.num_;
    exp_ = rhs.exp_;
  }
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& rhs) { return *this += -rhs; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& rhs) {
  num_ *= rhs.num_;
  exp_ += rhs.exp_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const std::uint32_t e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
  const BigInt lhs = a.num_ << (e - a.exp_);
  const BigInt rhs = b.num_ << (e - b.exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational DyadicRational::to_rational() const {
  return Rational(num_, BigInt(1) << exp_);
}

long double DyadicRational::to_long_double() const {
  return std::ldexp(num_.convert_to<long double>(), -static_cast<int>(exp_));
}

double DyadicRational::to_double() const { return static_cast<double>(to_long_double()); }

std::string DyadicRational::to_string() const {
  std::string s = num_.str();
  if (exp_ > 0) s += "/" + (BigInt(1) << exp_).str();
  return s;
}

DyadicRational DyadicRational::parse(std::string_view text) {
  const Rational r = parse_rational(text);
  const BigInt den = mp::denominator(r);
  if (den <= 0 || (den & (den - 1)) != 0) {
    throw InputError("not a dyadic rational: " + std::string(text));
  }
  return {mp::numerator(r), static_cast<std::uint32_t>(mp::lsb(den))};
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& d) { return os << d.to_string(); }

std::string rational_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InputError("empty number in '" + std::string(whole) + "'");
  const std::size_t sign = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t i = sign;
  if (i == s.size()) throw InputError("malformed number '" + std::string(whole) + "'");
  for (std::size_t k = sign; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw InputError("malformed number '" + std::string(whole) + "'");
  }
  while (i + 1 < s.size() && s[i] == '0') ++i;
  BigInt v(std::string(s.substr(i)));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den.is_zero()) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    const BigInt num = parse_integer(digits, text);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(parse_integer(text, text));
}

long double to_long_double(const Rational& r) {
  // Scale to keep 64+ significant bits for tiny values such as (1/8)^8.
  const BigInt& num = mp::numerator(r);
  const BigInt& den = mp::denominator(r);
  if (num.is_zero()) return 0.0L;
  const long shift = static_cast<long>(mp::msb(den)) - static_cast<long>(mp::msb(mp::abs(num))) + 80;
  const BigInt scaled = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  return std::ldexp(scaled.convert_to<long double>(), static_cast<int>(-shift));
}

}  // namespace rtlab
