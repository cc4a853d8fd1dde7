#include "nctorus/group_rep.hpp"

#include <algorithm>

#include "nctorus/errors.hpp"

namespace nct {

using Eigen::MatrixXcd;

GroupRep::GroupRep(std::vector<MatrixXcd> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw ContractViolation("representation needs at least one generator");
  const auto N = generators_.front().rows();
  if (N < 1) throw ContractViolation("representation fiber must be nonzero");
  for (const auto& r : generators_) {
    if (r.rows() != N || r.cols() != N) throw ContractViolation("generators must be square of equal size");
  }
}

MatrixXcd GroupRep::operator()(const GroupElement& g) const {
  if (g.residues.dim() != dim()) throw ContractViolation("group element dimension mismatch");
  MatrixXcd out = MatrixXcd::Identity(fiber_dim(), fiber_dim());
  for (int j = 0; j < dim(); ++j) {
    for (int t = 0; t < g.residues[j]; ++t) out = out * generators_[static_cast<std::size_t>(j)];
  }
  return out;
}

GroupRep::Defects GroupRep::defects(const Mode& fold) const {
  if (fold.dim() != dim()) throw ContractViolation("representation has the wrong number of generators");
  Defects d;
  const auto N = fiber_dim();
  const MatrixXcd id = MatrixXcd::Identity(N, N);
  for (int j = 0; j < dim(); ++j) {
    const MatrixXcd& r = generators_[static_cast<std::size_t>(j)];
    MatrixXcd power = id;
    for (int t = 0; t < fold[j]; ++t) power = power * r;
    d.order = std::max(d.order, (power - id).cwiseAbs().maxCoeff());
    d.unitary = std::max(d.unitary, (r.adjoint() * r - id).cwiseAbs().maxCoeff());
    for (int l = 0; l < dim(); ++l) {
      const MatrixXcd& s = generators_[static_cast<std::size_t>(l)];
      d.commute = std::max(d.commute, (r * s - s * r).cwiseAbs().maxCoeff());
    }
  }
  return d;
}

GroupRep GroupRep::trivial(int n, int fiber_dim) {
  return GroupRep(std::vector<MatrixXcd>(static_cast<std::size_t>(n), MatrixXcd::Identity(fiber_dim, fiber_dim)));
}

GroupRep GroupRep::sign(int n) {
  return GroupRep(std::vector<MatrixXcd>(static_cast<std::size_t>(n), -MatrixXcd::Identity(1, 1)));
}

GroupRep GroupRep::cyclic(const Mode& fold, int axis) {
  if (axis < 0 || axis >= fold.dim()) throw ContractViolation("cyclic preset: axis out of range");
  std::vector<MatrixXcd> gens(static_cast<std::size_t>(fold.dim()), MatrixXcd::Identity(1, 1));
  gens[static_cast<std::size_t>(axis)](0, 0) = unit_root(1, fold[axis]);
  return GroupRep(std::move(gens));
}

GroupRep GroupRep::regular(const CoveringSpec& spec) {
  const auto& elements = spec.elements();
  const auto N = static_cast<Eigen::Index>(elements.size());
  std::vector<MatrixXcd> gens;
  for (int j = 0; j < spec.dim(); ++j) {
    MatrixXcd r = MatrixXcd::Zero(N, N);
    const GroupElement step{Mode::unit(spec.dim(), j)};
    for (Eigen::Index h = 0; h < N; ++h) {
      const GroupElement target = spec.compose(step, elements[static_cast<std::size_t>(h)]);
      const auto it = std::find(elements.begin(), elements.end(), target);
      r(it - elements.begin(), h) = 1.0;
    }
    gens.push_back(std::move(r));
  }
  return GroupRep(std::move(gens));
}

MatrixXcd random_unitary(int size, Rng& rng) {
  MatrixXcd z(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) z(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<MatrixXcd> qr(z);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(size, size);
  // Fix the phases of R's diagonal so the draw does not depend on QR sign choices.
  const MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < size; ++c) {
    const double mag = std::abs(rmat(c, c));
    if (mag > 0.0) q.col(c) *= rmat(c, c) / mag;
  }
  return q;
}

GroupRep GroupRep::random(const Mode& fold, int fiber_dim, Rng& rng) {
  const MatrixXcd w = random_unitary(fiber_dim, rng);
  std::vector<MatrixXcd> gens;
  for (int j = 0; j < fold.dim(); ++j) {
    MatrixXcd diag = MatrixXcd::Zero(fiber_dim, fiber_dim);
    for (int i = 0; i < fiber_dim; ++i) diag(i, i) = unit_root(rng.uniform_int(0, fold[j] - 1), fold[j]);
    gens.push_back(w * diag * w.adjoint());
  }
  return GroupRep(std::move(gens));
}

GroupRep GroupRep::conjugated(const MatrixXcd& w) const {
  std::vector<MatrixXcd> gens;
  for (const auto& r : generators_) gens.push_back(w * r * w.adjoint());
  return GroupRep(std::move(gens));
}

}  // namespace nct
