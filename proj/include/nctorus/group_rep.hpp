#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nctorus/covering.hpp"
#include "nctorus/random.hpp"

namespace nct {

// Unitary representation ρ of ℤ_{k₁}×…×ℤ_{kₙ} on ℂᴺ, encoded by the images R_j of
// the generators. The relations are checked, not assumed: see defects().
class GroupRep {
 public:
  explicit GroupRep(std::vector<Eigen::MatrixXcd> generators);

  int dim() const { return static_cast<int>(generators_.size()); }
  int fiber_dim() const { return generators_.empty() ? 0 : static_cast<int>(generators_.front().rows()); }
  const std::vector<Eigen::MatrixXcd>& generators() const { return generators_; }

  // ρ(g) = Π_j R_j^{g_j}
  Eigen::MatrixXcd operator()(const GroupElement& g) const;

  struct Defects {
    double order = 0.0;     // max_j ‖R_j^{k_j} − I‖
    double commute = 0.0;   // max_{j,l} ‖R_j R_l − R_l R_j‖
    double unitary = 0.0;   // max_j ‖R_j† R_j − I‖
    double max() const { return std::max(order, std::max(commute, unitary)); }
  };
  Defects defects(const Mode& fold) const;

  static GroupRep trivial(int n, int fiber_dim = 1);
  // R_j = −1 on every axis (needs every k_j even to be a representation).
  static GroupRep sign(int n);
  // R_axis = e^{2πi/k_axis}, other generators 1.
  static GroupRep cyclic(const Mode& fold, int axis);
  // Left translation on ℂ[G]; N = |G| and every character occurs once.
  static GroupRep regular(const CoveringSpec& spec);
  // W·diag(random k_j-th roots of unity)·W† with one random unitary W.
  static GroupRep random(const Mode& fold, int fiber_dim, Rng& rng);

  // ρ' = W ρ W† for a unitary W (change of basis of the fiber).
  GroupRep conjugated(const Eigen::MatrixXcd& w) const;

 private:
  std::vector<Eigen::MatrixXcd> generators_;
};

Eigen::MatrixXcd random_unitary(int size, Rng& rng);

}  // namespace nct
