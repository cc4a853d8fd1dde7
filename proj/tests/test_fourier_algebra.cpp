#include <doctest.h>

#include <stdexcept>

#include "nctorus/errors.hpp"
#include "nctorus/random.hpp"
#include "nctorus/torus_element.hpp"
#include "test_support.hpp"

using namespace nct;
using nct::testing::theta2;
using nct::testing::theta_ptr;

namespace {

constexpr int kCap = 8;

std::vector<std::shared_ptr<const ThetaMatrix>> sample_thetas() {
  return {
      theta_ptr(1, {}),
      theta2(Rational(1, 4)),
      theta2(Rational(1, 5)),
      theta2(Rational(-7, 12)),
      theta_ptr(3, {Rational(1, 3), Rational(2, 5), Rational(-1, 4)}),
  };
}

}  // namespace

TEST_CASE("Rational: normalization, parsing, ordering and exact unit roots") {
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-1, 2).den() == 2);
  CHECK(Rational::parse(" -3/6 ") == Rational(-1, 2));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-7/3").frac() == Rational(2, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK(Rational(1, 30) * Rational(6) - Rational(1, 5) == Rational(0));
  CHECK((Rational(11, 30) * Rational(6) - Rational(1, 5)).is_integer());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(unit_root(1, 4) == Complex(0.0, 1.0));
  CHECK(unit_root(-1, 2) == Complex(-1.0, 0.0));
  CHECK(unit_root(3, 4) == Complex(0.0, -1.0));
  CHECK(std::abs(unit_root(1, 3) - std::polar(1.0, 2.0 * M_PI / 3.0)) <= 1e-15);
}

TEST_CASE("cocycle: documented values") {
  const auto t = theta2(Rational(1, 4));
  CHECK(cocycle(*t, Mode{1, 0}, Mode{0, 1}) == Complex(1.0, 0.0));
  // U₂U₁ = e^{2πiθ₂₁}U₁U₂ = i·U₁U₂
  CHECK(cocycle(*t, Mode{0, 1}, Mode{1, 0}) == Complex(0.0, 1.0));

  const auto zero = theta_ptr(3, {Rational(0), Rational(0), Rational(0)});
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Mode p(3), q(3);
    for (int j = 0; j < 3; ++j) {
      p[j] = static_cast<int>(rng.uniform_int(-9, 9));
      q[j] = static_cast<int>(rng.uniform_int(-9, 9));
    }
    CHECK(cocycle(*zero, p, q) == Complex(1.0, 0.0));
  }
  CHECK_THROWS_AS(cocycle(*t, Mode{1, 0, 0}, Mode{0, 1}), ContractViolation);
}

TEST_CASE("cocycle: identity and unit modulus on sampled modes") {
  Rng rng(11);
  for (const auto& theta : sample_thetas()) {
    const int n = theta->dim();
    double worst = 0.0;
    double modulus = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      Mode p(n), q(n), r(n);
      for (int j = 0; j < n; ++j) {
        p[j] = static_cast<int>(rng.uniform_int(-20, 20));
        q[j] = static_cast<int>(rng.uniform_int(-20, 20));
        r[j] = static_cast<int>(rng.uniform_int(-20, 20));
      }
      const Complex lhs = cocycle(*theta, p, q) * cocycle(*theta, p + q, r);
      const Complex rhs = cocycle(*theta, q, r) * cocycle(*theta, p, q + r);
      worst = std::max(worst, std::abs(lhs - rhs));
      modulus = std::max(modulus, std::abs(std::abs(cocycle(*theta, p, q)) - 1.0));
    }
    CHECK(worst <= 1e-13);
    CHECK(modulus <= 1e-14);
  }
}

TEST_CASE("mul: single modes and unit") {
  const auto t = theta2(Rational(1, 4));
  const auto u1 = TorusElement::monomial(t, kCap, Mode{1, 0});
  const auto u2 = TorusElement::monomial(t, kCap, Mode{0, 1});
  const auto prod = mul(u1, u2);
  REQUIRE(prod.size() == 1);
  CHECK(prod.coeff(Mode{1, 1}) == Complex(1.0, 0.0));

  const auto swapped = mul(u2, u1);
  CHECK(swapped.coeff(Mode{1, 1}) == Complex(0.0, 1.0));

  const auto one = TorusElement::unit(t, kCap);
  const auto unit_sq = mul(one, one);
  CHECK(unit_sq.size() == 1);
  CHECK(unit_sq.coeff(Mode{0, 0}) == Complex(1.0, 0.0));

  Rng rng(5);
  for (const auto& theta : sample_thetas()) {
    const auto a = random_element(theta, kCap, kCap, 0, rng);
    const auto e = TorusElement::unit(theta, kCap);
    CHECK(mul(e, a).coeffs() == a.coeffs());
    CHECK(mul(a, e).coeffs() == a.coeffs());
  }
}

TEST_CASE("mul: agrees with the clock-shift matrix representation") {
  Rng rng(17);
  const std::vector<std::shared_ptr<const ThetaMatrix>> thetas = {
      theta2(Rational(1, 5)), theta2(Rational(-5, 6)),
      theta_ptr(3, {Rational(1, 2), Rational(1, 3), Rational(-1, 6)})};
  for (const auto& theta : thetas) {
    const nct::testing::ClockShiftRep rep(*theta);
    // Generator relation of the oracle itself.
    const int n = theta->dim();
    for (int j = 1; j < n; ++j) {
      for (int k = 0; k < j; ++k) {
        const Eigen::MatrixXcd lhs = rep.generator(j) * rep.generator(k);
        const Eigen::MatrixXcd rhs = unit_root((*theta)(j, k)) * rep.generator(k) * rep.generator(j);
        CHECK(nct::testing::max_abs(lhs - rhs) <= 1e-13);
      }
    }
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = random_element(theta, kCap, 2, 6, rng);
      const auto b = random_element(theta, kCap, 2, 6, rng);
      const Eigen::MatrixXcd lhs = rep(mul(a, b));
      const Eigen::MatrixXcd rhs = rep(a) * rep(b);
      CHECK(nct::testing::max_abs(lhs - rhs) <= 1e-11);
      CHECK(nct::testing::max_abs(rep(adjoint(a)) - rep(a).adjoint()) <= 1e-12);
    }
  }
}

TEST_CASE("mul: associativity without truncation") {
  Rng rng(23);
  for (const auto& theta : sample_thetas()) {
    for (int trial = 0; trial < 20; ++trial) {
      // Three factors of degree ≤ M/3 keep every partial product inside the window.
      const auto a = random_element(theta, kCap, kCap / 3, 8, rng);
      const auto b = random_element(theta, kCap, kCap / 3, 8, rng);
      const auto c = random_element(theta, kCap, kCap / 3, 8, rng);
      const auto left = mul(mul(a, b), c);
      const auto right = mul(a, mul(b, c));
      CHECK_FALSE(left.truncated());
      CHECK_FALSE(right.truncated());
      CHECK(max_abs_diff(left, right) <= 1e-12);
    }
  }
}

TEST_CASE("mul: truncation drops outside modes and sets the flag") {
  const auto t = theta2(Rational(1, 5));
  const auto a = TorusElement::monomial(t, kCap, Mode{6, 0});
  const auto b = TorusElement::monomial(t, kCap, Mode{3, 1}) + TorusElement::monomial(t, kCap, Mode{-1, 1});
  const auto c = mul(a, b);
  CHECK(c.truncated());
  CHECK(c.size() == 1);
  CHECK(std::abs(c.coeff(Mode{5, 1})) == doctest::Approx(1.0));

  const auto small = mul(TorusElement::monomial(t, kCap, Mode{4, 0}), TorusElement::monomial(t, kCap, Mode{4, -8}));
  CHECK_FALSE(small.truncated());
}

TEST_CASE("mul: contract violations") {
  const auto t1 = theta2(Rational(1, 5));
  const auto t2 = theta2(Rational(2, 5));
  CHECK_THROWS_AS(mul(TorusElement::unit(t1, kCap), TorusElement::unit(t2, kCap)), ContractViolation);
  CHECK_THROWS_AS(mul(TorusElement::unit(t1, kCap), TorusElement::unit(t1, kCap + 1)), ContractViolation);
  // Equal matrices held by different pointers are the same algebra.
  const auto t1b = theta2(Rational(1, 5));
  CHECK_NOTHROW(mul(TorusElement::unit(t1, kCap), TorusElement::unit(t1b, kCap)));
}

TEST_CASE("mul: commutative case is plain convolution") {
  Rng rng(29);
  const auto zero = theta_ptr(2, {Rational(0)});
  const auto a = random_element(zero, kCap, kCap / 2, 0, rng);
  const auto b = random_element(zero, kCap, kCap / 2, 0, rng);
  const auto c = mul(a, b);
  double worst = 0.0;
  for (const auto& [r, v] : nct::testing::plain_convolution(a, b)) worst = std::max(worst, std::abs(c.coeff(r) - v));
  CHECK(worst <= 1e-14);
}

TEST_CASE("adjoint: unit, Weyl unitarity and anti-multiplicativity") {
  const auto t = theta2(Rational(1, 5));
  const auto one = TorusElement::unit(t, kCap);
  CHECK(adjoint(one).coeffs() == one.coeffs());

  Rng rng(31);
  for (const auto& theta : sample_thetas()) {
    const int n = theta->dim();
    for (int trial = 0; trial < 10; ++trial) {
      Mode p(n);
      for (int j = 0; j < n; ++j) p[j] = static_cast<int>(rng.uniform_int(-4, 4));
      const auto u = TorusElement::monomial(theta, kCap, p);
      const auto prod = mul(adjoint(u), u);
      CHECK(max_abs_diff(prod, TorusElement::unit(theta, kCap)) <= 1e-15);
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(theta, kCap, kCap / 2, 10, rng);
      const auto b = random_element(theta, kCap, kCap / 2, 10, rng);
      CHECK(max_abs_diff(adjoint(mul(a, b)), mul(adjoint(b), adjoint(a))) <= 1e-12);
      CHECK(max_abs_diff(adjoint(adjoint(a)), a) <= 1e-15 * std::max(1.0, a.max_abs()));
      const Complex tr = trace(mul(adjoint(a), a));
      CHECK(tr.real() >= -1e-12);
      CHECK(std::abs(tr.imag()) <= 1e-12 * std::max(1.0, tr.real()));
    }
  }
}

TEST_CASE("adjoint: involution is bit-exact for quarter-turn phases") {
  Rng rng(37);
  const auto t = theta2(Rational(1, 4));
  const auto a = random_element(t, kCap, kCap, 0, rng);
  CHECK(adjoint(adjoint(a)).coeffs() == a.coeffs());
  for (int j = 0; j < 2; ++j) CHECK(derivation(adjoint(a), j).coeffs() == adjoint(derivation(a, j)).coeffs());
}

TEST_CASE("derivation: eigenvectors, kernel and Leibniz") {
  const auto t = theta2(Rational(1, 5));
  CHECK(derivation(TorusElement::unit(t, kCap), 0).is_zero());
  const auto u = TorusElement::monomial(t, kCap, Mode{3, 0});
  const auto du = derivation(u, 0);
  CHECK(std::abs(du.coeff(Mode{3, 0}) - Complex(0.0, 6.0 * M_PI)) <= 1e-14);
  CHECK(derivation(u, 1).is_zero());
  CHECK_THROWS_AS(derivation(u, 2), ContractViolation);
  CHECK_THROWS_AS(derivation(u, -1), ContractViolation);

  Rng rng(41);
  for (const auto& theta : sample_thetas()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(theta, kCap, kCap / 2, 10, rng);
      const auto b = random_element(theta, kCap, kCap / 2, 10, rng);
      for (int j = 0; j < theta->dim(); ++j) {
        const auto lhs = derivation(mul(a, b), j);
        const auto rhs = mul(derivation(a, j), b) + mul(a, derivation(b, j));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(1.0, lhs.max_abs()));
        const auto star = derivation(adjoint(a), j);
        CHECK(max_abs_diff(star, adjoint(derivation(a, j))) <= 1e-15 * std::max(1.0, star.max_abs()));
      }
    }
  }
}

TEST_CASE("trace: unit, monomials and cyclicity") {
  const auto t = theta2(Rational(1, 5));
  CHECK(trace(TorusElement::unit(t, kCap)) == Complex(1.0, 0.0));
  CHECK(trace(TorusElement::monomial(t, kCap, Mode{1, -2})) == Complex(0.0, 0.0));
  Rng rng(43);
  for (const auto& theta : sample_thetas()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(theta, kCap, kCap / 2, 12, rng);
      const auto b = random_element(theta, kCap, kCap / 2, 12, rng);
      CHECK(std::abs(trace(mul(a, b)) - trace(mul(b, a))) <= 1e-12);
    }
  }
}

TEST_CASE("drop tolerance keeps tiny coefficients out") {
  const auto t = theta2(Rational(1, 5));
  TorusElement a(t, kCap);
  a.set(Mode{1, 1}, 1e-16);
  CHECK(a.is_zero());
  a.set(Mode{1, 1}, 1e-3);
  CHECK(a.size() == 1);
  CHECK_THROWS_AS(a.set(Mode{9, 0}, 1.0), ContractViolation);
}
