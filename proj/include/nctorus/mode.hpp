#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nct {

inline constexpr int kMaxDim = 8;

// Lattice point p ∈ ℤⁿ indexing the Weyl monomial U^p = U₁^{p₁}···Uₙ^{pₙ}.
class Mode {
 public:
  Mode() = default;
  explicit Mode(int dim);
  Mode(std::initializer_list<int> values);
  explicit Mode(std::span<const int> values);

  static Mode zero(int dim) { return Mode(dim); }
  static Mode unit(int dim, int axis);

  int dim() const { return dim_; }
  int operator[](int j) const { return c_[j]; }
  int& operator[](int j) { return c_[j]; }

  bool is_zero() const;
  // max_j |p_j|
  int degree() const;

  Mode operator-() const;
  friend Mode operator+(const Mode& a, const Mode& b);
  friend Mode operator-(const Mode& a, const Mode& b);

  friend bool operator==(const Mode& a, const Mode& b) = default;
  friend auto operator<=>(const Mode& a, const Mode& b) = default;

  std::string str() const;

 private:
  int dim_ = 0;
  std::array<int, kMaxDim> c_{};
};

// Dense index over the box [-cap, cap]ⁿ; row-major with the last axis fastest.
class ModeWindow {
 public:
  ModeWindow(int dim, int cap);

  int dim() const { return dim_; }
  int cap() const { return cap_; }
  std::size_t size() const { return size_; }

  bool contains(const Mode& p) const;
  std::size_t index(const Mode& p) const;
  Mode mode(std::size_t index) const;

 private:
  int dim_;
  int cap_;
  std::size_t size_;
};

}  // namespace nct
