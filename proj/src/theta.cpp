#include "nctorus/theta.hpp"

#include <algorithm>
#include <cstdlib>

#include "nctorus/errors.hpp"

namespace nct {

namespace {
constexpr std::int64_t kPhaseTableLimit = 1 << 16;
}

ThetaMatrix::ThetaMatrix(int n, std::vector<Rational> lower, std::int64_t denominator_limit)
    : n_(n), lower_(std::move(lower)) {
  if (n < 1 || n > kMaxDim) throw ContractViolation("theta dimension out of range");
  if (lower_.size() != static_cast<std::size_t>(n * (n - 1) / 2)) {
    throw ContractViolation("theta needs n(n-1)/2 lower-triangular entries");
  }
  for (const auto& r : lower_) {
    if (r.den() > denominator_limit) {
      throw ContractViolation("theta entry " + r.str() + " exceeds the denominator limit");
    }
    denom_ = lcm_checked(denom_, r.den());
  }
  scaled_.reserve(lower_.size());
  for (const auto& r : lower_) {
    const std::int64_t v = static_cast<std::int64_t>((static_cast<__int128>(r.num()) * (denom_ / r.den())) % denom_);
    scaled_.push_back(v < 0 ? v + denom_ : v);
  }
  if (denom_ <= kPhaseTableLimit) {
    auto table = std::make_shared<std::vector<std::complex<double>>>(static_cast<std::size_t>(denom_));
    for (std::int64_t e = 0; e < denom_; ++e) (*table)[static_cast<std::size_t>(e)] = unit_root(e, denom_);
    table_ = std::move(table);
  }
}

Rational ThetaMatrix::operator()(int r, int s) const {
  if (r < 0 || s < 0 || r >= n_ || s >= n_) throw ContractViolation("theta index out of range");
  if (r == s) return Rational(0);
  if (r > s) return lower_[lower_index(r, s)];
  return -lower_[lower_index(s, r)];
}

bool ThetaMatrix::is_zero() const {
  return std::all_of(lower_.begin(), lower_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::int64_t ThetaMatrix::cocycle_exponent(const Mode& p, const Mode& q) const {
  if (p.dim() != n_ || q.dim() != n_) throw ContractViolation("cocycle: mode dimension mismatch");
  __int128 acc = 0;
  for (int j = 1; j < n_; ++j) {
    if (p[j] == 0) continue;
    for (int k = 0; k < j; ++k) {
      const std::int64_t t = scaled_[lower_index(j, k)];
      if (t == 0 || q[k] == 0) continue;
      acc += static_cast<__int128>(t) * p[j] * q[k];
    }
  }
  std::int64_t e = static_cast<std::int64_t>(acc % denom_);
  return e < 0 ? e + denom_ : e;
}

std::complex<double> ThetaMatrix::phase(std::int64_t exponent) const {
  if (table_) return (*table_)[static_cast<std::size_t>(exponent)];
  return unit_root(exponent, denom_);
}

std::complex<double> cocycle(const ThetaMatrix& theta, const Mode& p, const Mode& q) {
  return theta.phase(theta.cocycle_exponent(p, q));
}

}  // namespace nct
