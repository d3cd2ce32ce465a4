#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <iosfwd>

namespace arboreal {

// Exact rational on 64-bit numerator/denominator, always reduced, denominator
// positive. Arithmetic goes through 128-bit intermediates and throws
// std::overflow_error if a reduced result does not fit; comparisons can never
// overflow. Every branch decision in this library is an exact equality or
// order test, so no floating point anywhere.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational half() const { return *this / Rational(2); }

  // Lowest terms; "p" when integral, "p/q" otherwise.
  std::string str() const;

  // "p", "p/q", or a decimal when the reduced denominator is a power of ten.
  std::string str_preferring_decimal() const;

  // Accepts integers ("3"), fractions ("3/2"), and decimals ("1.5", ".25").
  static std::optional<Rational> parse(std::string_view text);

 private:
  static Rational reduced(__int128 n, __int128 d);
  long long num_;
  long long den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace arboreal
