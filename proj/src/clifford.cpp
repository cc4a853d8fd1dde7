#include "nctorus/clifford.hpp"

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>

#include "nctorus/errors.hpp"

namespace nct {

namespace {

using Mat = Eigen::MatrixXcd;

Mat pauli(int which) {
  Mat s(2, 2);
  const std::complex<double> i(0.0, 1.0);
  switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& f : factors) {
    Mat next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return out;
}

}  // namespace

CliffordAlgebra gamma_matrices(int n) {
  if (n < 1 || n > kMaxCliffordDim) {
    throw ContractViolation("gamma_matrices: n must lie in [1, " + std::to_string(kMaxCliffordDim) + "]");
  }
  const int m = n / 2;
  CliffordAlgebra cl;
  cl.n = n;
  for (int a = 0; a < m; ++a) {
    for (int which : {1, 2}) {
      std::vector<Mat> factors;
      for (int b = 0; b < a; ++b) factors.push_back(pauli(3));
      factors.push_back(pauli(which));
      for (int b = a + 1; b < m; ++b) factors.push_back(Mat::Identity(2, 2));
      cl.gammas.push_back(kron_all(factors));
    }
  }
  if (n % 2 == 1) {
    std::vector<Mat> factors(static_cast<std::size_t>(m), pauli(3));
    cl.gammas.push_back(kron_all(factors));
  }
  return cl;
}

double CliffordAlgebra::anticommutator_defect() const {
  double worst = 0.0;
  const int d = spinor_dim();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Mat ac = gammas[j] * gammas[k] + gammas[k] * gammas[j];
      if (j == k) ac -= 2.0 * Mat::Identity(d, d);
      worst = std::max(worst, ac.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double CliffordAlgebra::self_adjoint_defect() const {
  double worst = 0.0;
  for (const auto& g : gammas) worst = std::max(worst, (g - g.adjoint()).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace nct
