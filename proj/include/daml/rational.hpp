#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace daml {

// Exact rational in canonical form: gcd(|num|, den) == 1 and den > 0.
// Arithmetic that would leave the int64 range throws Error(Overflow).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  Rational operator+(const Rational& rhs) const;
  Rational operator-(const Rational& rhs) const;
  Rational operator*(const Rational& rhs) const;
  Rational operator/(const Rational& rhs) const;

  bool operator==(const Rational& rhs) const noexcept = default;
  std::strong_ordering operator<=>(const Rational& rhs) const noexcept;

  // "40/1", "9/2"; the denominator is always printed.
  std::string str() const;
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace daml
