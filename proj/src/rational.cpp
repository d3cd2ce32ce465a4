#include "arboreal/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace arboreal {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax64 = std::numeric_limits<long long>::max();

}  // namespace

Rational Rational::reduced(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax64 || n < -kMax64 || d > kMax64)
    throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<long long>(n);
  r.den_ = static_cast<long long>(d);
  return r;
}

Rational::Rational(long long num, long long den) {
  *this = reduced(num, den);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  *this = reduced(static_cast<__int128>(num_) * o.den_ +
                      static_cast<__int128>(o.num_) * den_,
                  static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  *this = reduced(static_cast<__int128>(num_) * o.den_ -
                      static_cast<__int128>(o.num_) * den_,
                  static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  *this = reduced(static_cast<__int128>(num_) * o.num_,
                  static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = reduced(static_cast<__int128>(num_) * o.den_,
                  static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

std::string Rational::str_preferring_decimal() const {
  if (den_ == 1) return std::to_string(num_);
  long long d = den_;
  int zeros = 0;
  while (d % 10 == 0) {
    d /= 10;
    ++zeros;
  }
  if (d != 1) return str();
  // denominator is 10^zeros
  long long n = num_ < 0 ? -num_ : num_;
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) <= zeros)
    digits.insert(0, zeros + 1 - digits.size(), '0');
  digits.insert(digits.size() - zeros, ".");
  if (num_ < 0) digits.insert(0, "-");
  return digits;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  __int128 num = 0;
  __int128 den = 1;
  bool any_digit = false;
  bool seen_dot = false;
  bool seen_slash = false;
  constexpr __int128 kLimit = std::numeric_limits<long long>::max();
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (seen_slash) {
        den = den * 10 + (c - '0');
        if (den > kLimit) return std::nullopt;
      } else {
        num = num * 10 + (c - '0');
        if (seen_dot) {
          den *= 10;
          if (den > kLimit) return std::nullopt;
        }
        if (num > kLimit) return std::nullopt;
      }
    } else if (c == '.' && !seen_dot && !seen_slash) {
      seen_dot = true;
    } else if (c == '/' && !seen_slash && !seen_dot && any_digit) {
      seen_slash = true;
      den = 0;
      any_digit = false;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit || den == 0) return std::nullopt;
  if (neg) num = -num;
  try {
    return reduced(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace arboreal
