#include "nctorus/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nctorus/errors.hpp"
#include "nctorus/random.hpp"

namespace nct {

Mode DiracOperator::fold_ones(int n) {
  Mode k(n);
  for (int j = 0; j < n; ++j) k[j] = 1;
  return k;
}

DiracOperator::DiracOperator(int n, int cap, Mode fold, DiracScaling scaling)
    : window_(n, cap), fold_(fold), scaling_(scaling), clifford_(gamma_matrices(n)) {
  if (fold_.dim() != n) throw ContractViolation("dirac: fold length must equal n");
  for (int j = 0; j < n; ++j) {
    if (fold_[j] < 1) throw ContractViolation("dirac: fold entries must be >= 1");
  }
}

double DiracOperator::eigenvalue(const Mode& p, int axis) const {
  const double scale = scaling_ == DiracScaling::Geometric ? static_cast<double>(fold_[axis]) : 1.0;
  return 2.0 * std::numbers::pi * static_cast<double>(p[axis]) / scale;
}

Eigen::MatrixXcd DiracOperator::block(const Mode& p) const {
  const int d = spinor_dim();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < dim(); ++j) {
    if (p[j] != 0) b += eigenvalue(p, j) * clifford_.gammas[static_cast<std::size_t>(j)];
  }
  return b;
}

SparseOperator DiracOperator::matrix() const {
  const int d = spinor_dim();
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t i = 0; i < window_.size(); ++i) {
    const Eigen::MatrixXcd b = block(window_.mode(i));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (b(r, c) != Complex{}) {
          entries.emplace_back(static_cast<int>(i) * d + r, static_cast<int>(i) * d + c, b(r, c));
        }
      }
    }
  }
  SparseOperator m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

std::string DiracOperator::convention() {
  return "D = -i sum_j gamma^j (x) delta_j, D(U^p (x) s) = sum_j (2 pi p_j / k_j) U^p (x) gamma^j s; "
         "[D,a] = -i sum_j gamma^j (x) delta_j(a)";
}

SpinorVector dirac_apply(const DiracOperator& D, const SpinorVector& v) {
  if (static_cast<std::size_t>(v.size()) != D.size()) throw ContractViolation("dirac_apply: shape mismatch");
  const int d = D.spinor_dim();
  SpinorVector out(v.size());
  const auto modes = static_cast<std::int64_t>(D.window().size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < modes; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out.segment(i * d, d) = D.block(D.window().mode(idx)) * v.segment(i * d, d);
  }
  return out;
}

WindowOperator left_multiplication(const ModeWindow& window, int spinor_dim, const TorusElement& a) {
  if (a.dim() != window.dim()) throw ContractViolation("left_multiplication: dimension mismatch");
  const ThetaMatrix& theta = a.theta();
  std::vector<Eigen::Triplet<Complex>> entries;
  WindowOperator op;
  for (std::size_t col = 0; col < window.size(); ++col) {
    const Mode q = window.mode(col);
    for (const auto& [p, c] : a.coeffs()) {
      const Mode r = p + q;
      if (!window.contains(r)) {
        op.truncated = true;
        continue;
      }
      const Complex v = cocycle(theta, p, q) * c;
      const auto row = window.index(r);
      for (int s = 0; s < spinor_dim; ++s) {
        entries.emplace_back(static_cast<int>(row) * spinor_dim + s, static_cast<int>(col) * spinor_dim + s, v);
      }
    }
  }
  const auto size = static_cast<Eigen::Index>(window.size() * static_cast<std::size_t>(spinor_dim));
  op.matrix.resize(size, size);
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

WindowOperator one_form(const DiracOperator& D, const TorusElement& a) {
  WindowOperator left = left_multiplication(D.window(), D.spinor_dim(), a);
  const SparseOperator dm = D.matrix();
  WindowOperator out;
  out.truncated = left.truncated;
  out.matrix = (dm * left.matrix - left.matrix * dm).pruned();
  return out;
}

std::vector<TorusElement> one_form_components(const DiracOperator& D, const TorusElement& a) {
  const WindowOperator form = one_form(D, a);
  const int d = D.spinor_dim();
  const auto origin = static_cast<Eigen::Index>(D.window().index(Mode::zero(D.dim())));
  // Dense copy of the d columns belonging to U^0.
  const Eigen::MatrixXcd cols = Eigen::MatrixXcd(form.matrix.middleCols(origin * d, d));
  std::vector<TorusElement> out(static_cast<std::size_t>(D.dim()), a.zero_like());
  for (std::size_t i = 0; i < D.window().size(); ++i) {
    const Mode p = D.window().mode(i);
    if (p.degree() > a.cap()) continue;
    const Eigen::MatrixXcd y = cols.middleRows(static_cast<Eigen::Index>(i) * d, d);
    if (y.cwiseAbs().maxCoeff() == 0.0) continue;
    for (int j = 0; j < D.dim(); ++j) {
      const Complex t = (D.clifford().gammas[static_cast<std::size_t>(j)] * y).trace() / static_cast<double>(d);
      out[static_cast<std::size_t>(j)].set(p, Complex(0.0, 1.0) * t);
    }
  }
  return out;
}

std::vector<std::size_t> interior_columns(const DiracOperator& D, int margin) {
  std::vector<std::size_t> cols;
  const int d = D.spinor_dim();
  for (std::size_t i = 0; i < D.window().size(); ++i) {
    if (D.window().mode(i).degree() + margin > D.cap()) continue;
    for (int s = 0; s < d; ++s) cols.push_back(i * static_cast<std::size_t>(d) + static_cast<std::size_t>(s));
  }
  return cols;
}

double column_residual(const SparseOperator& A, const SparseOperator& B, const std::vector<std::size_t>& cols) {
  const SparseOperator diff = A - B;
  double worst = 0.0;
  for (std::size_t c : cols) {
    for (SparseOperator::InnerIterator it(diff, static_cast<Eigen::Index>(c)); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

SpinorVector embed_spinor(const CoveringSpec& spec, const DiracOperator& D_base, const DiracOperator& D_cov,
                          const SpinorVector& v) {
  const int d = D_base.spinor_dim();
  SpinorVector out = SpinorVector::Zero(static_cast<Eigen::Index>(D_cov.size()));
  for (std::size_t i = 0; i < D_base.window().size(); ++i) {
    const Mode p = D_base.window().mode(i);
    Mode q(p.dim());
    for (int j = 0; j < p.dim(); ++j) q[j] = spec.fold()[j] * p[j];
    const auto target = static_cast<Eigen::Index>(D_cov.window().index(q));
    out.segment(target * d, d) = v.segment(static_cast<Eigen::Index>(i) * d, d);
  }
  return out;
}

SpinorVector act_spinor(const CoveringSpec& spec, const GroupElement& g, const DiracOperator& D_cov,
                        const SpinorVector& v) {
  const int d = D_cov.spinor_dim();
  SpinorVector out(v.size());
  for (std::size_t i = 0; i < D_cov.window().size(); ++i) {
    const auto at = static_cast<Eigen::Index>(i) * d;
    out.segment(at, d) = spec.character(g, D_cov.window().mode(i)) * v.segment(at, d);
  }
  return out;
}

LiftReport check_lift(const CoveringSpec& spec, const DiracOperator& D_base, const DiracOperator& D_cov,
                      std::uint64_t seed, int random_samples) {
  if (D_base.dim() != spec.dim() || D_cov.dim() != spec.dim()) throw ContractViolation("check_lift: dimension mismatch");
  if (D_cov.cap() < D_base.cap() * spec.max_fold()) {
    throw ContractViolation("check_lift: covering window too small for the embedded base window");
  }
  for (int j = 0; j < spec.dim(); ++j) {
    if (D_base.fold()[j] != 1 || D_cov.fold()[j] != spec.fold()[j]) {
      throw ContractViolation("check_lift: operators do not match the covering fold");
    }
  }
  LiftReport report;
  report.convention = DiracOperator::convention();

  // (b) on single modes: the covering block at kp against the base block at p.
  for (std::size_t i = 0; i < D_base.window().size(); ++i) {
    const Mode p = D_base.window().mode(i);
    Mode q(p.dim());
    for (int j = 0; j < p.dim(); ++j) q[j] = spec.fold()[j] * p[j];
    const double r = (D_cov.block(q) - D_base.block(p)).cwiseAbs().maxCoeff();
    report.residual_b = std::max(report.residual_b, r);
  }

  Rng rng(seed);
  auto random_vector = [&rng](std::size_t size) {
    SpinorVector v(static_cast<Eigen::Index>(size));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
    return v;
  };
  for (int s = 0; s < random_samples; ++s) {
    const SpinorVector v = random_vector(D_base.size());
    const SpinorVector lhs = dirac_apply(D_cov, embed_spinor(spec, D_base, D_cov, v));
    const SpinorVector rhs = embed_spinor(spec, D_base, D_cov, dirac_apply(D_base, v));
    report.residual_b = std::max(report.residual_b, (lhs - rhs).cwiseAbs().maxCoeff());
  }

  // (c) equivariance for every g.
  std::vector<SpinorVector> samples;
  for (int s = 0; s < random_samples; ++s) samples.push_back(random_vector(D_cov.size()));
  for (const auto& g : spec.elements()) {
    double worst = 0.0;
    for (const auto& v : samples) {
      const SpinorVector lhs = dirac_apply(D_cov, act_spinor(spec, g, D_cov, v));
      const SpinorVector rhs = act_spinor(spec, g, D_cov, dirac_apply(D_cov, v));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report.residual_c_per_element.push_back(worst);
    report.residual_c = std::max(report.residual_c, worst);
  }
  return report;
}

}  // namespace nct
