#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nctorus/mode.hpp"
#include "nctorus/rational.hpp"
#include "nctorus/theta.hpp"
#include "nctorus/torus_element.hpp"

namespace nct {

inline constexpr std::size_t kDefaultEnumerateCap = 4096;

// Element of G = ℤ_{k₁}×…×ℤ_{kₙ}, stored as residues 0 ≤ g_j < k_j.
struct GroupElement {
  Mode residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  bool is_identity() const { return residues.is_zero(); }
};

// Covering triple (C(Tⁿ_Θ), C(Tⁿ_Θ̃), ℤ_{k₁}×…×ℤ_{kₙ}) with
// θ̃_rs = (θ_rs + m_rs) / (k_r k_s), so that θ̃_rs k_r k_s − θ_rs = m_rs ∈ ℤ.
class CoveringSpec {
 public:
  CoveringSpec(std::shared_ptr<const ThetaMatrix> theta, Mode fold, std::vector<std::int64_t> offsets);

  const ThetaMatrix& theta() const { return *theta_; }
  const std::shared_ptr<const ThetaMatrix>& theta_ptr() const { return theta_; }
  const ThetaMatrix& theta_tilde() const { return *theta_tilde_; }
  const std::shared_ptr<const ThetaMatrix>& theta_tilde_ptr() const { return theta_tilde_; }
  const Mode& fold() const { return fold_; }
  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  int dim() const { return fold_.dim(); }
  int max_fold() const;

  // |G| = Π k_j
  std::int64_t order() const { return order_; }
  // All of G in lexicographic order of residues; this order fixes every Σ_g.
  const std::vector<GroupElement>& elements() const { return elements_; }

  // Exact check of e^{−2πiθ_rs} = e^{−2πiθ̃_rs k_r k_s}: every θ̃_rs k_r k_s − θ_rs is an integer.
  bool congruence_holds() const;
  // θ̃_rs k_r k_s − θ_rs for r > s, in lower-triangular order.
  std::vector<Rational> congruence_defects() const;

  // χ_g(p) = exp(2πi Σ_j g_j p_j / k_j)
  Complex character(const GroupElement& g, const Mode& p) const;
  // Residue class of p, components in [0, k_j).
  Mode residue(const Mode& p) const;
  bool divisible(const Mode& p) const { return residue(p).is_zero(); }
  GroupElement compose(const GroupElement& g, const GroupElement& h) const;

  // Covering cap needed to embed base elements of degree `base_cap`.
  int cover_cap(int base_cap) const { return base_cap * max_fold(); }

 private:
  std::shared_ptr<const ThetaMatrix> theta_;
  Mode fold_;
  std::vector<std::int64_t> offsets_;
  std::shared_ptr<const ThetaMatrix> theta_tilde_;
  std::int64_t order_ = 1;
  std::int64_t fold_lcm_ = 1;
  std::vector<GroupElement> elements_;
};

CoveringSpec make_covering(std::shared_ptr<const ThetaMatrix> theta, const Mode& fold,
                           std::vector<std::int64_t> offsets);

// All solution branches m_rs ∈ {0, …, k_r k_s − 1}; throws std::length_error when
// the branch count exceeds `limit`.
std::vector<CoveringSpec> enumerate_covers(std::shared_ptr<const ThetaMatrix> theta, const Mode& fold,
                                           std::size_t limit = kDefaultEnumerateCap);

// ι: U^p ↦ Ũ^{kp}. With the ordered-monomial convention no phase correction is
// needed: σ̃(kp, kq) = σ(p, q). cover_cap < 0 picks spec.cover_cap(a.cap()); with
// strict set, a truncated result throws TruncationError.
TorusElement embed(const CoveringSpec& spec, const TorusElement& a, int cover_cap = -1,
                   bool strict = false);

// (g·a)_p = χ_g(p)·a_p
TorusElement act(const CoveringSpec& spec, const GroupElement& g, const TorusElement& a);

// (1/|G|) Σ_g g·a, re-indexed to base modes p/k. base_cap < 0 picks
// a.cap() / max_fold(); surviving modes beyond it are dropped and flagged.
TorusElement conditional_expectation(const CoveringSpec& spec, const TorusElement& a,
                                     int base_cap = -1);

// ⟨a, b⟩ = Σ_g g(a*·b), returned as an element over the base Θ.
TorusElement hilbert_product(const CoveringSpec& spec, const TorusElement& a, const TorusElement& b,
                             int base_cap = -1);

// Ã as a right ι(A)-module: every window mode p̃ splits as Ũ^c·ι(U^q) with c the
// residue class of p̃. Reports how many classes occur and the worst deviation of
// the split from a unit-modulus multiple of Ũ^{p̃}.
struct FreeRankReport {
  std::int64_t classes = 0;
  double max_defect = 0.0;
};
FreeRankReport free_rank(const CoveringSpec& spec, int cover_cap);

}  // namespace nct
