#include "daml/rational.hpp"

#include <numeric>

#include "daml/error.hpp"

namespace daml {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::Overflow, "rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::Overflow, "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::Overflow, "zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw Error(ErrorKind::Overflow, "rational negation overflow");
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::operator+(const Rational& rhs) const {
  return make(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
              static_cast<__int128>(den_) * rhs.den_);
}

Rational Rational::operator-(const Rational& rhs) const {
  return make(static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_,
              static_cast<__int128>(den_) * rhs.den_);
}

Rational Rational::operator*(const Rational& rhs) const {
  return make(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
}

Rational Rational::operator/(const Rational& rhs) const {
  return make(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const noexcept {
  // Denominators are positive, so cross-multiplication preserves order.
  __int128 l = static_cast<__int128>(num_) * rhs.den_;
  __int128 r = static_cast<__int128>(rhs.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace daml
