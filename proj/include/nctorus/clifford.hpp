#pragma once

#include <vector>

#include <Eigen/Dense>

namespace nct {

inline constexpr int kMaxCliffordDim = 6;

// Self-adjoint generators γ¹…γⁿ of the complex Clifford algebra,
// γ^jγ^k + γ^kγ^j = 2δ_jk·I, acting on ℂ^{2^⌊n/2⌋}.
struct CliffordAlgebra {
  int n = 0;
  std::vector<Eigen::MatrixXcd> gammas;

  int spinor_dim() const { return gammas.empty() ? 0 : static_cast<int>(gammas.front().rows()); }

  // max_{j,k} ‖γ^jγ^k + γ^kγ^j − 2δ_jk I‖_max
  double anticommutator_defect() const;
  // max_j ‖γ^j − (γ^j)†‖_max
  double self_adjoint_defect() const;
};

// Jordan-Wigner construction: the pair (2a, 2a+1) is σ₃^{⊗a} ⊗ σ₁ / σ₂ ⊗ I^{⊗(m−a−1)},
// and for odd n the last generator is σ₃^{⊗m}. Throws for n outside [1, 6].
CliffordAlgebra gamma_matrices(int n);

}  // namespace nct
