#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vobs {

// Exact rational arithmetic on 64-bit words, kept in canonical reduced form:
// den > 0 and gcd(|num|, den) == 1. Intermediates are widened to 128 bits;
// a reduced result that does not fit back into 64 bits throws
// std::overflow_error. Payoffs, beliefs, tie detection, and exact p-value
// counts all live in this type, so solver comparisons never touch floating
// point.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Shortest exact decimal when the reduced denominator divides a power of
  // ten, otherwise "num/den".
  std::string to_string() const;

  // Accepts a decimal literal (optional '-', digits, optional '.' plus 1..9
  // fraction digits) or "p/q" with integer p and positive integer q.
  static std::optional<Rat> parse(std::string_view text);
  // Decimal form only; this is the grammar used for action labels.
  static std::optional<Rat> parse_decimal(std::string_view text);

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  static Rat reduced(__int128 num, __int128 den);

  long long num_ = 0;
  long long den_ = 1;
};

Rat abs(const Rat& r);

}  // namespace vobs
