#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "nctorus/mode.hpp"
#include "nctorus/rational.hpp"

namespace nct {

inline constexpr std::int64_t kDefaultDenominatorLimit = 1'000'000;

// Skew-symmetric rational deformation matrix Θ. Only θ_rs with r > s is stored;
// θ_sr = -θ_rs and θ_rr = 0 follow from the accessors. Indices are 0-based.
//
// Convention: U_r U_s = e^{2πiθ_rs} U_s U_r, and U^p = U₁^{p₁}···Uₙ^{pₙ}.
class ThetaMatrix {
 public:
  // `lower` lists θ_rs for r > s in the order (1,0), (2,0), (2,1), (3,0), ...
  ThetaMatrix(int n, std::vector<Rational> lower,
              std::int64_t denominator_limit = kDefaultDenominatorLimit);

  static ThetaMatrix zero(int n) { return ThetaMatrix(n, std::vector<Rational>(n * (n - 1) / 2)); }

  int dim() const { return n_; }
  Rational operator()(int r, int s) const;
  const std::vector<Rational>& lower() const { return lower_; }
  bool is_zero() const;

  static std::size_t lower_index(int r, int s) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(r - 1) / 2 + static_cast<std::size_t>(s);
  }

  // Common denominator L of all entries.
  std::int64_t common_denominator() const { return denom_; }

  // Integer e in [0, L) with Σ_{j>k} θ_jk p_j q_k ≡ e / L (mod 1).
  std::int64_t cocycle_exponent(const Mode& p, const Mode& q) const;

  // exp(2πi·e/L) for an exponent returned by cocycle_exponent.
  std::complex<double> phase(std::int64_t exponent) const;

  friend bool operator==(const ThetaMatrix& a, const ThetaMatrix& b) {
    return a.n_ == b.n_ && a.lower_ == b.lower_;
  }

 private:
  int n_;
  std::vector<Rational> lower_;
  std::int64_t denom_ = 1;
  std::vector<std::int64_t> scaled_;  // θ_rs·L mod L
  std::shared_ptr<const std::vector<std::complex<double>>> table_;
};

// σ(p,q) = exp(2πi Σ_{j>k} θ_jk p_j q_k), the reordering phase in U^p U^q = σ(p,q) U^{p+q}.
std::complex<double> cocycle(const ThetaMatrix& theta, const Mode& p, const Mode& q);

}  // namespace nct
