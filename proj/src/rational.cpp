#include "nctorus/rational.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace nct {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::frac() const {
  std::int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Rational(r, den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t bscale = b.den_ / g;
  const std::int64_t ascale = a.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, bscale), checked_mul(b.num_, ascale)),
                  checked_mul(a.den_, bscale));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t d1 = g1 == 0 ? 1 : g1;
  const std::int64_t d2 = g2 == 0 ? 1 : g2;
  return Rational(checked_mul(a.num_ / d1, b.num_ / d2), checked_mul(a.den_ / d2, b.den_ / d1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text), 1);
  const std::int64_t num = parse_int(text.substr(0, slash), text);
  const std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("unit_root needs a positive denominator");
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if (r == 0) return {1.0, 0.0};
  // Quarter turns: 4r/den in {1,2,3}.
  if ((4 * static_cast<__int128>(r)) % den == 0) {
    switch (static_cast<int>((4 * static_cast<__int128>(r)) / den)) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  // Reduce to (-1/2, 1/2] turns before scaling so the angle stays small.
  if (2 * static_cast<__int128>(r) > den) r -= den;
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
  return {std::cos(angle), std::sin(angle)};
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = std::gcd(a, b);
  return checked_mul(a / g, b < 0 ? -b : b);
}

}  // namespace nct
