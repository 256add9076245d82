#include "vobs/rational.hpp"

#include <cctype>
#include <limits>

namespace vobs {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kMin64 = std::numeric_limits<long long>::min();
constexpr i128 kMax64 = std::numeric_limits<long long>::max();

}  // namespace

Rat Rat::reduced(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) den = 1;
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num < kMin64 || num > kMax64 || den > kMax64) {
    throw std::overflow_error("Rat: value does not fit in 64 bits");
  }
  Rat r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

Rat::Rat(long long num, long long den) { *this = reduced(num, den); }

Rat Rat::operator-() const {
  if (num_ == kMin64) throw std::overflow_error("Rat: negation overflow");
  Rat r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat::reduced(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
  return Rat::reduced(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
  return Rat::reduced(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
  return Rat::reduced(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

bool operator<(const Rat& a, const Rat& b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

std::string Rat::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  long long d = den_;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  // Terminating decimal: long division, exact by construction. The reduced
  // form guarantees the last emitted digit is nonzero.
  unsigned long long mag = num_ < 0 ? 0ULL - static_cast<unsigned long long>(num_)
                                    : static_cast<unsigned long long>(num_);
  const unsigned long long den = static_cast<unsigned long long>(den_);
  std::string out = num_ < 0 ? "-" : "";
  out += std::to_string(mag / den);
  out += '.';
  unsigned __int128 rem = mag % den;
  while (rem != 0) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<i128> parse_digits(std::string_view s) {
  if (!all_digits(s) || s.size() > 27) return std::nullopt;
  i128 v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::optional<Rat> Rat::parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  if (text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 9) return std::nullopt;
    if (!all_digits(frac_part)) return std::nullopt;
  }
  const auto ip = parse_digits(int_part);
  if (!ip) return std::nullopt;
  i128 den = 1;
  i128 num = *ip;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (neg) num = -num;
  try {
    return reduced(num, den);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

std::optional<Rat> Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  std::string_view num_part = text.substr(0, slash);
  std::string_view den_part = text.substr(slash + 1);
  bool neg = false;
  if (!num_part.empty() && num_part.front() == '-') {
    neg = true;
    num_part.remove_prefix(1);
  }
  const auto n = parse_digits(num_part);
  const auto d = parse_digits(den_part);
  if (!n || !d || *d == 0) return std::nullopt;
  try {
    return reduced(neg ? -*n : *n, *d);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

Rat abs(const Rat& r) { return r.is_negative() ? -r : r; }

}  // namespace vobs
