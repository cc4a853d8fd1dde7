#include <doctest.h>

#include "nctorus/dirac.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/random.hpp"
#include "test_support.hpp"

using namespace nct;
using nct::testing::theta2;
using nct::testing::theta_ptr;

namespace {

SpinorVector random_spinor(std::size_t size, Rng& rng) {
  SpinorVector v(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  return v;
}

SpinorVector single_mode(const DiracOperator& D, const Mode& p, int s) {
  SpinorVector v = SpinorVector::Zero(static_cast<Eigen::Index>(D.size()));
  v[static_cast<Eigen::Index>(D.window().index(p)) * D.spinor_dim() + s] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("gamma_matrices: sizes and Clifford relations") {
  const auto g1 = gamma_matrices(1);
  REQUIRE(g1.gammas.size() == 1);
  CHECK(g1.spinor_dim() == 1);
  CHECK(g1.gammas[0](0, 0) == Complex(1.0, 0.0));

  for (int n = 1; n <= kMaxCliffordDim; ++n) {
    const auto cl = gamma_matrices(n);
    CHECK(static_cast<int>(cl.gammas.size()) == n);
    CHECK(cl.spinor_dim() == (1 << (n / 2)));
    // Independent check of the relation with explicit products.
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd ac = cl.gammas[j] * cl.gammas[k] + cl.gammas[k] * cl.gammas[j];
        if (j == k) ac -= 2.0 * Eigen::MatrixXcd::Identity(cl.spinor_dim(), cl.spinor_dim());
        CHECK(nct::testing::max_abs(ac) <= 1e-14);
      }
      CHECK(nct::testing::max_abs(cl.gammas[j] - cl.gammas[j].adjoint()) <= 1e-14);
    }
    CHECK(cl.anticommutator_defect() <= 1e-14);
    CHECK(cl.self_adjoint_defect() <= 1e-14);
  }
  CHECK_THROWS_AS(gamma_matrices(0), ContractViolation);
  CHECK_THROWS_AS(gamma_matrices(7), ContractViolation);
}

TEST_CASE("dirac_apply: kernel, eigenvalue normalization and self-adjointness") {
  const auto D = DiracOperator::base(1, 8);
  CHECK(dirac_apply(D, single_mode(D, Mode{0}, 0)).cwiseAbs().maxCoeff() == 0.0);
  const SpinorVector v = single_mode(D, Mode{1}, 0);
  CHECK((dirac_apply(D, v) - 2.0 * M_PI * v).cwiseAbs().maxCoeff() <= 1e-15);

  // Covering with k = 2: Ũ² carries the eigenvalue of base mode 1.
  const auto spec = make_covering(theta_ptr(1, {}), Mode{2}, {});
  const auto Dc = DiracOperator::covering(spec, 16);
  const SpinorVector w = single_mode(Dc, Mode{2}, 0);
  CHECK((dirac_apply(Dc, w) - 2.0 * M_PI * w).cwiseAbs().maxCoeff() <= 1e-15);

  Rng rng(301);
  for (int n = 1; n <= 3; ++n) {
    const auto op = DiracOperator::base(n, 4);
    for (int trial = 0; trial < 5; ++trial) {
      const SpinorVector a = random_spinor(op.size(), rng);
      const SpinorVector b = random_spinor(op.size(), rng);
      const Complex lhs = dirac_apply(op, a).dot(b);
      const Complex rhs = a.dot(dirac_apply(op, b));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
    const SparseOperator m = op.matrix();
    CHECK(SparseOperator(m - SparseOperator(m.adjoint())).norm() <= 1e-12);
    // The sparse matrix and the matrix-free action agree.
    const SpinorVector x = random_spinor(op.size(), rng);
    CHECK((m * x - dirac_apply(op, x)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(dirac_apply(D, SpinorVector::Zero(3)), ContractViolation);
}

TEST_CASE("one_form: unit, monomials and component recovery") {
  const auto theta = theta2(Rational(1, 5));
  const auto D = DiracOperator::base(2, 6);
  CHECK(one_form(D, TorusElement::unit(theta, 6)).matrix.nonZeros() == 0);

  // [D, U^p] = −i Σ_j (2πi p_j) γ^j ⊗ L_{U^p}
  const Mode p{1, -2};
  const auto u = TorusElement::monomial(theta, 6, p);
  const auto form = one_form(D, u);
  const auto left = left_multiplication(D.window(), D.spinor_dim(), u);
  SparseOperator expected(static_cast<Eigen::Index>(D.size()), static_cast<Eigen::Index>(D.size()));
  for (int j = 0; j < 2; ++j) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(D.size()), static_cast<Eigen::Index>(D.size()));
    const Eigen::MatrixXcd l = Eigen::MatrixXcd(left.matrix);
    const auto d = D.spinor_dim();
    for (std::size_t r = 0; r < D.window().size(); ++r)
      for (std::size_t c = 0; c < D.window().size(); ++c) {
        const Complex lv = l(static_cast<Eigen::Index>(r) * d, static_cast<Eigen::Index>(c) * d);
        if (lv == Complex{}) continue;
        big.block(static_cast<Eigen::Index>(r) * d, static_cast<Eigen::Index>(c) * d, d, d) =
            Complex(0.0, -1.0) * Complex(0.0, 2.0 * M_PI * p[j]) * lv * D.clifford().gammas[j];
      }
    expected += big.sparseView();
  }
  CHECK(SparseOperator(form.matrix - expected).norm() <= 1e-11);

  Rng rng(303);
  for (int n = 1; n <= 3; ++n) {
    const auto th = n == 1 ? theta_ptr(1, {}) : (n == 2 ? theta2(Rational(2, 7)) : theta_ptr(3, {Rational(1, 3), Rational(1, 4), Rational(-1, 6)}));
    const int cap = n == 3 ? 3 : 6;
    const auto op = DiracOperator::base(n, cap);
    const auto a = random_element(th, cap, cap / 2, 6, rng);
    const auto parts = one_form_components(op, a);
    for (int j = 0; j < n; ++j) CHECK(max_abs_diff(parts[j], derivation(a, j)) <= 1e-12);
  }
}

TEST_CASE("one_form: derivation property on interior columns") {
  Rng rng(307);
  const auto theta = theta2(Rational(3, 8));
  const int cap = 10;
  const auto D = DiracOperator::base(2, cap);
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = random_element(theta, cap, 2, 5, rng);
    const auto b = random_element(theta, cap, 2, 5, rng);
    const auto la = left_multiplication(D.window(), D.spinor_dim(), a).matrix;
    const auto lb = left_multiplication(D.window(), D.spinor_dim(), b).matrix;
    const SparseOperator lhs = one_form(D, mul(a, b)).matrix;
    const SparseOperator rhs = one_form(D, a).matrix * lb + la * one_form(D, b).matrix;
    const auto interior = interior_columns(D, 4);
    CHECK_FALSE(interior.empty());
    CHECK(column_residual(lhs, rhs, interior) <= 1e-12);
    // And it matches −i Σ γ^j ⊗ L_{δ_j a} column by column.
    SparseOperator via_derivations(static_cast<Eigen::Index>(D.size()), static_cast<Eigen::Index>(D.size()));
    for (int j = 0; j < 2; ++j) {
      const auto ld = left_multiplication(D.window(), 1, derivation(a, j)).matrix;
      Eigen::SparseMatrix<Complex> gamma = D.clifford().gammas[j].sparseView();
      SparseOperator kron(static_cast<Eigen::Index>(D.size()), static_cast<Eigen::Index>(D.size()));
      std::vector<Eigen::Triplet<Complex>> t;
      for (int k = 0; k < ld.outerSize(); ++k)
        for (SparseOperator::InnerIterator it(ld, k); it; ++it)
          for (int r = 0; r < D.spinor_dim(); ++r)
            for (int c = 0; c < D.spinor_dim(); ++c)
              if (D.clifford().gammas[j](r, c) != Complex{})
                t.emplace_back(static_cast<int>(it.row()) * D.spinor_dim() + r, static_cast<int>(it.col()) * D.spinor_dim() + c,
                               Complex(0.0, -1.0) * it.value() * D.clifford().gammas[j](r, c));
      kron.setFromTriplets(t.begin(), t.end());
      via_derivations += kron;
    }
    CHECK(column_residual(one_form(D, a).matrix, via_derivations, interior_columns(D, 0)) <= 1e-11);
  }
}

TEST_CASE("check_lift: geometric scaling passes, unscaled covering fails") {
  for (const auto& [theta, fold] : std::vector<std::pair<std::shared_ptr<const ThetaMatrix>, Mode>>{
           {theta_ptr(1, {}), Mode{2}}, {theta_ptr(1, {}), Mode{3}}, {theta2(Rational(1, 5)), Mode{2, 3}},
           {theta2(Rational(2, 3)), Mode{3, 3}}}) {
    const auto spec = make_covering(theta, fold, {});
    const int base_cap = spec.dim() == 1 ? 8 : 4;
    const auto Db = DiracOperator::base(spec.dim(), base_cap);
    const auto Dc = DiracOperator::covering(spec, spec.cover_cap(base_cap));
    const auto report = check_lift(spec, Db, Dc, 7);
    CHECK(report.residual_b <= 1e-12);
    CHECK(report.residual_c <= 1e-12);
    CHECK(report.residual_c_per_element.front() == 0.0);
    CHECK(report.passed());

    const auto wrong = DiracOperator::covering(spec, spec.cover_cap(base_cap), DiracScaling::Unscaled);
    CHECK(check_lift(spec, Db, wrong, 7).residual_b > 1.0);
  }
  const auto spec = make_covering(theta_ptr(1, {}), Mode{2}, {});
  CHECK_THROWS_AS(check_lift(spec, DiracOperator::base(1, 8), DiracOperator::covering(spec, 10)), ContractViolation);
}
