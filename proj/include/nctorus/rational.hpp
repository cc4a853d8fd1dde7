#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nct {

// Exact rational with 64-bit numerator/denominator, always normalized so that
// gcd(num, den) == 1 and den > 0. Overflow in arithmetic throws.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Representative of this value modulo 1, in [0, 1).
  Rational frac() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  // "num/den" or "num"; throws std::invalid_argument on malformed input or a zero
  // denominator.
  static Rational parse(std::string_view text);
  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// exp(2πi·num/den), with num reduced modulo den first. Quarter turns are returned
// exactly (1, i, -1, -i) so that sign-type phases carry no rounding.
std::complex<double> unit_root(std::int64_t num, std::int64_t den);

inline std::complex<double> unit_root(const Rational& r) { return unit_root(r.num(), r.den()); }

std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace nct
