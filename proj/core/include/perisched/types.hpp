#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace perisched {

// All time quantities are integral time units.
using Time = std::int64_t;
using TaskId = std::int32_t;
using Rng = std::mt19937_64;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Floor/ceil division for b > 0.
constexpr Time floor_div(Time a, Time b) {
  Time q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}
constexpr Time ceil_div(Time a, Time b) { return -floor_div(-a, b); }
constexpr Time mod_floor(Time a, Time b) { return a - floor_div(a, b) * b; }

// Normalized exact fraction, denominator > 0.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw InputError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator*(Rational a, Rational b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend constexpr Rational operator/(Rational a, Rational b) {
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  Rational& operator+=(Rational o) { return *this = *this + o; }

  friend constexpr bool operator==(Rational a, Rational b) = default;
  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  // Decimal rendering with `digits` fractional digits, rounded half away from zero.
  std::string to_fixed(int digits) const;
  // Parses "3", "0.75", "3/4".
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Tightness factor alpha in (0, 1].
class Alpha {
 public:
  Alpha() = default;
  explicit Alpha(Rational value);
  static Alpha parse(std::string_view text) { return Alpha(Rational::parse(text)); }
  Rational value() const { return value_; }
  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  Rational value_{1};
};

}  // namespace perisched
