#include "nctorus/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nctorus/errors.hpp"

namespace nct {

CoveringSpec::CoveringSpec(std::shared_ptr<const ThetaMatrix> theta, Mode fold,
                           std::vector<std::int64_t> offsets)
    : theta_(std::move(theta)), fold_(fold), offsets_(std::move(offsets)) {
  if (!theta_) throw ContractViolation("covering needs a base theta");
  const int n = theta_->dim();
  if (fold_.dim() != n) throw ContractViolation("fold vector length must equal n");
  for (int j = 0; j < n; ++j) {
    if (fold_[j] < 1) throw ContractViolation("fold entries must be >= 1");
    order_ *= fold_[j];
    fold_lcm_ = lcm_checked(fold_lcm_, fold_[j]);
  }
  if (offsets_.empty()) offsets_.assign(theta_->lower().size(), 0);
  if (offsets_.size() != theta_->lower().size()) {
    throw ContractViolation("offsets need one entry per off-diagonal pair r > s");
  }

  std::vector<Rational> tilde;
  tilde.reserve(offsets_.size());
  for (int r = 1; r < n; ++r) {
    for (int s = 0; s < r; ++s) {
      const std::size_t idx = ThetaMatrix::lower_index(r, s);
      tilde.push_back((theta_->lower()[idx] + Rational(offsets_[idx])) /
                      Rational(static_cast<std::int64_t>(fold_[r]) * fold_[s]));
    }
  }
  theta_tilde_ = std::make_shared<const ThetaMatrix>(n, std::move(tilde),
                                                      std::numeric_limits<std::int64_t>::max());

  // Lexicographic enumeration of the residues.
  Mode g(n);
  for (std::int64_t i = 0; i < order_; ++i) {
    elements_.push_back(GroupElement{g});
    for (int j = n - 1; j >= 0; --j) {
      if (++g[j] < fold_[j]) break;
      g[j] = 0;
    }
  }
}

int CoveringSpec::max_fold() const {
  int m = 1;
  for (int j = 0; j < dim(); ++j) m = std::max(m, fold_[j]);
  return m;
}

std::vector<Rational> CoveringSpec::congruence_defects() const {
  std::vector<Rational> out;
  for (int r = 1; r < dim(); ++r) {
    for (int s = 0; s < r; ++s) {
      out.push_back(theta_tilde_->operator()(r, s) * Rational(static_cast<std::int64_t>(fold_[r]) * fold_[s]) -
                    theta_->operator()(r, s));
    }
  }
  return out;
}

bool CoveringSpec::congruence_holds() const {
  const auto defects = congruence_defects();
  return std::all_of(defects.begin(), defects.end(), [](const Rational& d) { return d.is_integer(); });
}

Complex CoveringSpec::character(const GroupElement& g, const Mode& p) const {
  if (g.residues.dim() != dim() || p.dim() != dim()) throw ContractViolation("character: dimension mismatch");
  __int128 acc = 0;
  for (int j = 0; j < dim(); ++j) {
    acc += static_cast<__int128>(g.residues[j]) * p[j] * (fold_lcm_ / fold_[j]);
  }
  return unit_root(static_cast<std::int64_t>(acc % fold_lcm_), fold_lcm_);
}

Mode CoveringSpec::residue(const Mode& p) const {
  Mode c(dim());
  for (int j = 0; j < dim(); ++j) {
    int v = p[j] % fold_[j];
    c[j] = v < 0 ? v + fold_[j] : v;
  }
  return c;
}

GroupElement CoveringSpec::compose(const GroupElement& g, const GroupElement& h) const {
  return GroupElement{residue(g.residues + h.residues)};
}

CoveringSpec make_covering(std::shared_ptr<const ThetaMatrix> theta, const Mode& fold,
                           std::vector<std::int64_t> offsets) {
  CoveringSpec spec(std::move(theta), fold, std::move(offsets));
  if (!spec.congruence_holds()) throw std::logic_error("covering congruence failed");
  return spec;
}

std::vector<CoveringSpec> enumerate_covers(std::shared_ptr<const ThetaMatrix> theta, const Mode& fold,
                                           std::size_t limit) {
  const int n = theta->dim();
  if (fold.dim() != n) throw ContractViolation("fold vector length must equal n");
  std::vector<std::int64_t> radix;
  std::size_t total = 1;
  for (int r = 1; r < n; ++r) {
    for (int s = 0; s < r; ++s) {
      const std::int64_t choices = static_cast<std::int64_t>(fold[r]) * fold[s];
      if (choices < 1) throw ContractViolation("fold entries must be >= 1");
      radix.push_back(choices);
      if (total > limit / static_cast<std::size_t>(choices) + 1) total = limit + 1;
      else total *= static_cast<std::size_t>(choices);
    }
  }
  if (total > limit) {
    throw std::length_error("covering enumeration exceeds the cap of " + std::to_string(limit) + " branches");
  }
  std::vector<CoveringSpec> out;
  out.reserve(total);
  std::vector<std::int64_t> m(radix.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    out.push_back(make_covering(theta, fold, m));
    for (std::size_t j = m.size(); j-- > 0;) {
      if (++m[j] < radix[j]) break;
      m[j] = 0;
    }
  }
  return out;
}

namespace {

void require_base(const CoveringSpec& spec, const TorusElement& a) {
  if (!(a.theta() == spec.theta())) throw ContractViolation("element is not over the base theta");
}

void require_cover(const CoveringSpec& spec, const TorusElement& a) {
  if (!(a.theta() == spec.theta_tilde())) throw ContractViolation("element is not over the covering theta");
}

}  // namespace

TorusElement embed(const CoveringSpec& spec, const TorusElement& a, int cover_cap, bool strict) {
  require_base(spec, a);
  if (cover_cap < 0) cover_cap = spec.cover_cap(a.cap());
  TorusElement out(spec.theta_tilde_ptr(), cover_cap, a.drop_tol());
  bool truncated = a.truncated();
  for (const auto& [p, c] : a.coeffs()) {
    Mode q(p.dim());
    for (int j = 0; j < p.dim(); ++j) q[j] = spec.fold()[j] * p[j];
    if (q.degree() > cover_cap) {
      truncated = true;
      continue;
    }
    out.set(q, c);
  }
  if (truncated && strict) throw TruncationError("embed: image leaves the covering window");
  out.mark_truncated(truncated);
  return out;
}

TorusElement act(const CoveringSpec& spec, const GroupElement& g, const TorusElement& a) {
  require_cover(spec, a);
  TorusElement out = a.zero_like();
  for (const auto& [p, c] : a.coeffs()) out.set(p, spec.character(g, p) * c);
  out.mark_truncated(a.truncated());
  return out;
}

namespace {

// Σ_g χ_g(p)·x_p for the modes p ∈ kℤⁿ, re-indexed to p/k. Other modes cancel
// (character orthogonality) and are discarded.
TorusElement average_to_base(const CoveringSpec& spec, const TorusElement& x, double scale, int base_cap) {
  TorusElement out(spec.theta_ptr(), base_cap, x.drop_tol());
  bool truncated = x.truncated();
  for (const auto& [p, c] : x.coeffs()) {
    if (!spec.divisible(p)) continue;
    Complex sum{};
    for (const auto& g : spec.elements()) sum += spec.character(g, p) * c;
    Mode q(p.dim());
    for (int j = 0; j < p.dim(); ++j) q[j] = p[j] / spec.fold()[j];
    if (q.degree() > base_cap) {
      truncated = true;
      continue;
    }
    out.set(q, scale * sum);
  }
  out.mark_truncated(truncated);
  return out;
}

}  // namespace

TorusElement conditional_expectation(const CoveringSpec& spec, const TorusElement& a, int base_cap) {
  require_cover(spec, a);
  if (base_cap < 0) base_cap = a.cap() / spec.max_fold();
  return average_to_base(spec, a, 1.0 / static_cast<double>(spec.order()), base_cap);
}

TorusElement hilbert_product(const CoveringSpec& spec, const TorusElement& a, const TorusElement& b,
                             int base_cap) {
  require_cover(spec, a);
  require_cover(spec, b);
  if (base_cap < 0) base_cap = a.cap() / spec.max_fold();
  return average_to_base(spec, mul(adjoint(a), b), 1.0, base_cap);
}

FreeRankReport free_rank(const CoveringSpec& spec, int cover_cap) {
  const int n = spec.dim();
  const ModeWindow window(n, cover_cap);
  const int base_cap = cover_cap;  // ι(U^q) for |q_j| ≤ cover_cap / k_j, always inside
  std::vector<Mode> seen;
  FreeRankReport report;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Mode p = window.mode(i);
    const Mode c = spec.residue(p);
    Mode q(n);
    for (int j = 0; j < n; ++j) q[j] = (p[j] - c[j]) / spec.fold()[j];
    const TorusElement generator = TorusElement::monomial(spec.theta_tilde_ptr(), 2 * cover_cap + 1, c);
    const TorusElement base = TorusElement::monomial(spec.theta_ptr(), base_cap, q);
    const TorusElement image = mul(generator, embed(spec, base, 2 * cover_cap + 1));
    double defect = 1.0;
    if (image.size() == 1 && image.coeffs().begin()->first == p) {
      defect = std::abs(std::abs(image.coeffs().begin()->second) - 1.0);
    }
    report.max_defect = std::max(report.max_defect, defect);
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
  }
  report.classes = static_cast<std::int64_t>(seen.size());
  return report;
}

}  // namespace nct
