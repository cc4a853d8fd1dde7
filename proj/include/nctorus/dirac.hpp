#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nctorus/clifford.hpp"
#include "nctorus/covering.hpp"
#include "nctorus/mode.hpp"
#include "nctorus/torus_element.hpp"

namespace nct {

using SpinorVector = Eigen::VectorXcd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

// Eigenvalue rule of a Dirac operator on the k-fold covering torus. Geometric is
// 2π p_j / k_j; Unscaled (2π p_j) exists only as a negative control for the lift.
enum class DiracScaling { Geometric, Unscaled };

// Self-adjoint Dirac operator D = −i Σ_j γ^j ⊗ δ_j on ℓ²([-cap, cap]ⁿ) ⊗ ℂ^d:
//   D(U^p ⊗ s) = Σ_j (2π p_j / k_j) U^p ⊗ γ^j s.
// Vectors are laid out as window.index(p)·d + s.
class DiracOperator {
 public:
  DiracOperator(int n, int cap, Mode fold, DiracScaling scaling = DiracScaling::Geometric);

  static DiracOperator base(int n, int cap) { return DiracOperator(n, cap, fold_ones(n)); }
  static DiracOperator covering(const CoveringSpec& spec, int cap,
                                DiracScaling scaling = DiracScaling::Geometric) {
    return DiracOperator(spec.dim(), cap, spec.fold(), scaling);
  }

  int dim() const { return window_.dim(); }
  int cap() const { return window_.cap(); }
  const ModeWindow& window() const { return window_; }
  const CliffordAlgebra& clifford() const { return clifford_; }
  const Mode& fold() const { return fold_; }
  DiracScaling scaling() const { return scaling_; }
  int spinor_dim() const { return clifford_.spinor_dim(); }
  std::size_t size() const { return window_.size() * static_cast<std::size_t>(spinor_dim()); }

  // 2π p_j / k_j (or 2π p_j when Unscaled)
  double eigenvalue(const Mode& p, int axis) const;
  // d×d block Σ_j eigenvalue(p, j) γ^j acting on the spinor at mode p.
  Eigen::MatrixXcd block(const Mode& p) const;

  SparseOperator matrix() const;

  static std::string convention();

 private:
  static Mode fold_ones(int n);

  ModeWindow window_;
  Mode fold_;
  DiracScaling scaling_;
  CliffordAlgebra clifford_;
};

// D·v, OpenMP-parallel over modes.
SpinorVector dirac_apply(const DiracOperator& D, const SpinorVector& v);

// Left multiplication by a on the truncated window, tensored with I_d. Products
// leaving the window are dropped; `truncated` reports whether that happened.
struct WindowOperator {
  SparseOperator matrix;
  bool truncated = false;
};
WindowOperator left_multiplication(const ModeWindow& window, int spinor_dim, const TorusElement& a);

// [D, a] on the truncated space. Equals −i Σ_j γ^j ⊗ L_{δ_j a} where δ_j carries
// the operator's fold.
WindowOperator one_form(const DiracOperator& D, const TorusElement& a);

// Recovers δ_j(a) from [D, a] by applying it to U^0 ⊗ e_s and taking
// i·tr(γ^j Y_p)/d of the resulting d×d blocks.
std::vector<TorusElement> one_form_components(const DiracOperator& D, const TorusElement& a);

// Column indices of modes with degree ≤ cap − margin; products with elements of
// degree ≤ margin stay inside the window there.
std::vector<std::size_t> interior_columns(const DiracOperator& D, int margin);

// max |(A − B)_{rc}| over the given columns
double column_residual(const SparseOperator& A, const SparseOperator& B, const std::vector<std::size_t>& cols);

// Lift conditions for (A, Ã, G): (b) D̃(ι-embedded ξ) = ι-embedded(Dξ) on every base
// single mode and spinor basis vector plus random base vectors; (c) D̃(gξ̃) = g(D̃ξ̃)
// for every g on random covering vectors.
struct LiftReport {
  double residual_b = 0.0;
  double residual_c = 0.0;
  std::vector<double> residual_c_per_element;  // in spec.elements() order
  double tolerance = 1e-12;
  std::string convention;
  bool passed() const { return residual_b <= tolerance && residual_c <= tolerance; }
};
LiftReport check_lift(const CoveringSpec& spec, const DiracOperator& D_base, const DiracOperator& D_cov,
                      std::uint64_t seed = 1, int random_samples = 3);

// Base spinor vector → covering spinor vector, mode p ↦ kp.
SpinorVector embed_spinor(const CoveringSpec& spec, const DiracOperator& D_base, const DiracOperator& D_cov,
                          const SpinorVector& v);
// g acting by χ_g(p) on the spinor at mode p.
SpinorVector act_spinor(const CoveringSpec& spec, const GroupElement& g, const DiracOperator& D_cov,
                        const SpinorVector& v);

}  // namespace nct
