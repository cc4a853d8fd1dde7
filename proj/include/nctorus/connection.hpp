#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/covering.hpp"
#include "nctorus/group_rep.hpp"
#include "nctorus/torus_element.hpp"

namespace nct {

using FiberVector = Eigen::VectorXcd;

// Element of Ẽ = Ã ⊗ ℂᴺ: a sparse map from covering modes to fiber vectors.
class ModuleElement {
 public:
  using Coeffs = std::map<Mode, FiberVector>;

  ModuleElement(std::shared_ptr<const CoveringSpec> spec, int fiber_dim, int cap,
                double drop_tol = kDefaultDropTolerance);

  // Splices N covering-algebra elements into one module element.
  static ModuleElement from_components(std::shared_ptr<const CoveringSpec> spec,
                                       const std::vector<TorusElement>& components);

  const CoveringSpec& spec() const { return *spec_; }
  const std::shared_ptr<const CoveringSpec>& spec_ptr() const { return spec_; }
  int fiber_dim() const { return fiber_dim_; }
  int cap() const { return cap_; }
  double drop_tol() const { return drop_tol_; }
  const Coeffs& coeffs() const { return coeffs_; }
  FiberVector coeff(const Mode& p) const;
  bool is_zero() const { return coeffs_.empty(); }

  void set(const Mode& p, const FiberVector& x);
  void add(const Mode& p, const FiberVector& x);

  TorusElement component(int i) const;

  bool truncated() const { return truncated_; }
  void mark_truncated(bool flag = true) { truncated_ = truncated_ || flag; }

  double max_abs() const;
  ModuleElement zero_like() const { return ModuleElement(spec_, fiber_dim_, cap_, drop_tol_); }
  bool compatible(const ModuleElement& other) const;

 private:
  std::shared_ptr<const CoveringSpec> spec_;
  int fiber_dim_;
  int cap_;
  double drop_tol_;
  Coeffs coeffs_;
  bool truncated_ = false;
};

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator-(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator*(Complex s, const ModuleElement& a);
double max_abs_diff(const ModuleElement& a, const ModuleElement& b);

ModuleElement random_module_element(std::shared_ptr<const CoveringSpec> spec, int fiber_dim, int cap,
                                    int degree, int terms, Rng& rng);

// Coefficients of dx_1 … dx_n.
struct OneFormValued {
  std::vector<ModuleElement> components;
  double max_abs() const;
};

// Coefficients of dx_j ∧ dx_l for j < l, ordered (0,1), (0,2), …, (1,2), …
struct TwoFormValued {
  std::vector<ModuleElement> components;
  double max_abs() const;
};

OneFormValued operator+(const OneFormValued& a, const OneFormValued& b);
OneFormValued operator-(const OneFormValued& a, const OneFormValued& b);
double max_abs_diff(const OneFormValued& a, const OneFormValued& b);

// Idempotent e ∈ End_A(Ẽ) given by one N×N matrix per residue class c ∈ Π ℤ_{k_j};
// e acts on the coefficient at mode p by P_{p mod k}.
class ModeProjector {
 public:
  ModeProjector(Mode fold, std::vector<Eigen::MatrixXcd> blocks);

  const Mode& fold() const { return fold_; }
  int fiber_dim() const { return static_cast<int>(blocks_.front().rows()); }
  std::size_t classes() const { return blocks_.size(); }
  // Residue classes in lexicographic order, matching blocks().
  std::vector<Mode> residues() const;
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  const Eigen::MatrixXcd& at(const Mode& residue) const;

  double idempotent_defect() const;    // max_c ‖P_c² − P_c‖
  double self_adjoint_defect() const;  // max_c ‖P_c† − P_c‖
  std::vector<int> ranks() const;

  // e' = P + P X_c (I − P): same image, generally not self-adjoint.
  ModeProjector oblique(const std::vector<Eigen::MatrixXcd>& x) const;

 private:
  std::size_t linear(const Mode& residue) const;

  Mode fold_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

// P_c = (1/|G|) Σ_g χ_g(c) ρ(g). Throws ContractViolation when ρ violates its relations
// beyond `rep_tol`.
ModeProjector mode_projector(const CoveringSpec& spec, const GroupRep& rep, double rep_tol = 1e-12);

ModuleElement project(const ModeProjector& e, const ModuleElement& xi);

// g(ã ⊗ x) = gã ⊗ ρ(g)x
ModuleElement act_module(const CoveringSpec& spec, const GroupRep& rep, const GroupElement& g,
                         const ModuleElement& xi);

// ξ·ι(a) componentwise, a over the base Θ.
ModuleElement right_action(const ModuleElement& xi, const TorusElement& a);

// Component j multiplies the coefficient at p by 2πi p_j / k_j.
OneFormValued trivial_connection(const ModuleElement& xi);

// ‖project(e, ξ) − ξ‖ / max(1, ‖ξ‖)
double membership_residual(const ModeProjector& e, const ModuleElement& xi);

// (e ⊗ 1)∘d on E = eẼ. Throws ContractViolation carrying the residual when ξ ∉ E.
OneFormValued induced_connection(const ModeProjector& e, const ModuleElement& xi, double tol = 1e-12);

// Any idempotent acting on Ẽ (for instance a non-constant matrix idempotent).
using IdempotentMap = std::function<ModuleElement(const ModuleElement&)>;

// F_jl(ξ) = ∇_j∇_l ξ − ∇_l∇_j ξ with ∇_j = e∘δ̃_j, applied explicitly twice.
TwoFormValued curvature_of(const IdempotentMap& e, const ModuleElement& xi);

TwoFormValued curvature(const ModeProjector& e, const ModuleElement& xi, double tol = 1e-12);

// Left multiplication by an N×N matrix over the covering algebra. Used to build
// non-constant idempotents whose curvature does not vanish.
class MatrixIdempotent {
 public:
  MatrixIdempotent(std::shared_ptr<const CoveringSpec> spec, int fiber_dim, std::vector<TorusElement> entries);

  // e = v wᵀ with v = (1, c), w = (1 − bc, b); e² = e because wᵀv = 1.
  static MatrixIdempotent rank_one(std::shared_ptr<const CoveringSpec> spec, const TorusElement& b,
                                   const TorusElement& c);

  ModuleElement apply(const ModuleElement& xi) const;
  int fiber_dim() const { return fiber_dim_; }

 private:
  std::shared_ptr<const CoveringSpec> spec_;
  int fiber_dim_;
  std::vector<TorusElement> entries_;  // row-major
};

// Frequencies and holonomy of the induced connection for commutative tori.
struct HolonomyClass {
  Mode residue;
  int rank = 0;
  std::vector<Rational> frequency_offset;  // λ_j ∈ ℤ + c_j/k_j, reported mod 1
  std::vector<Complex> holonomy;           // exp(−2πi λ_j)
};

struct HolonomyReport {
  std::vector<HolonomyClass> classes;                 // classes with rank > 0
  std::vector<std::vector<Complex>> generator_spectra;  // eigenvalues of R_j, sorted by angle
  // max over classes/axes of ‖R_j P_c − h_j P_c‖, plus the multiset mismatch between
  // the rank-weighted holonomies and the generator spectra.
  double defect = 0.0;
  int total_rank = 0;
};

// Requires Θ = Θ̃ = 0; throws ContractViolation("Θ ≠ 0") otherwise.
HolonomyReport holonomy_spectrum(const CoveringSpec& spec, const GroupRep& rep);

}  // namespace nct
