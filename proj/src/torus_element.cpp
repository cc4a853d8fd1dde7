#include "nctorus/torus_element.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nctorus/errors.hpp"

namespace nct {

TorusElement::TorusElement(std::shared_ptr<const ThetaMatrix> theta, int cap, double drop_tol)
    : theta_(std::move(theta)), cap_(cap), drop_tol_(drop_tol) {
  if (!theta_) throw ContractViolation("torus element needs a theta matrix");
  if (cap < 0) throw ContractViolation("negative degree cap");
}

TorusElement TorusElement::unit(std::shared_ptr<const ThetaMatrix> theta, int cap, double drop_tol) {
  const int n = theta->dim();
  return monomial(std::move(theta), cap, Mode::zero(n), 1.0, drop_tol);
}

TorusElement TorusElement::monomial(std::shared_ptr<const ThetaMatrix> theta, int cap, const Mode& p,
                                    Complex coeff, double drop_tol) {
  TorusElement e(std::move(theta), cap, drop_tol);
  e.set(p, coeff);
  return e;
}

Complex TorusElement::coeff(const Mode& p) const {
  auto it = coeffs_.find(p);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void TorusElement::set(const Mode& p, Complex value) {
  if (p.dim() != dim()) throw ContractViolation("mode dimension mismatch");
  if (p.degree() > cap_) throw ContractViolation("mode " + p.str() + " outside the degree cap");
  if (std::abs(value) < drop_tol_) {
    coeffs_.erase(p);
  } else {
    coeffs_[p] = value;
  }
}

void TorusElement::add(const Mode& p, Complex value) { set(p, coeff(p) + value); }

double TorusElement::max_abs() const {
  double m = 0.0;
  for (const auto& [p, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

int TorusElement::degree() const {
  int d = 0;
  for (const auto& [p, c] : coeffs_) d = std::max(d, p.degree());
  return d;
}

bool TorusElement::same_algebra(const TorusElement& other) const {
  return cap_ == other.cap_ && (theta_ == other.theta_ || *theta_ == *other.theta_);
}

TorusElement adjoint(const TorusElement& a) {
  TorusElement out = a.zero_like();
  for (const auto& [p, c] : a.coeffs()) {
    out.set(-p, std::conj(c) * std::conj(cocycle(a.theta(), p, -p)));
  }
  out.mark_truncated(a.truncated());
  return out;
}

TorusElement derivation(const TorusElement& a, int axis, int fold) {
  if (axis < 0 || axis >= a.dim()) throw ContractViolation("derivation axis out of range");
  if (fold < 1) throw ContractViolation("derivation fold must be positive");
  TorusElement out = a.zero_like();
  for (const auto& [p, c] : a.coeffs()) {
    const double eigen = 2.0 * std::numbers::pi * static_cast<double>(p[axis]) / static_cast<double>(fold);
    out.set(p, Complex(0.0, eigen) * c);
  }
  out.mark_truncated(a.truncated());
  return out;
}

Complex trace(const TorusElement& a) { return a.coeff(Mode::zero(a.dim())); }

namespace {

void require_same(const TorusElement& a, const TorusElement& b, const char* what) {
  if (!a.same_algebra(b)) throw ContractViolation(std::string(what) + ": elements live in different algebras");
}

TorusElement combine(const TorusElement& a, const TorusElement& b, double sign) {
  TorusElement out = a;
  for (const auto& [p, c] : b.coeffs()) out.add(p, sign * c);
  out.mark_truncated(b.truncated());
  return out;
}

}  // namespace

TorusElement operator+(const TorusElement& a, const TorusElement& b) {
  require_same(a, b, "add");
  return combine(a, b, 1.0);
}

TorusElement operator-(const TorusElement& a, const TorusElement& b) {
  require_same(a, b, "sub");
  return combine(a, b, -1.0);
}

TorusElement operator*(Complex s, const TorusElement& a) {
  TorusElement out = a.zero_like();
  for (const auto& [p, c] : a.coeffs()) out.set(p, s * c);
  out.mark_truncated(a.truncated());
  return out;
}

double max_abs_diff(const TorusElement& a, const TorusElement& b) {
  double m = 0.0;
  for (const auto& [p, c] : a.coeffs()) m = std::max(m, std::abs(c - b.coeff(p)));
  for (const auto& [p, c] : b.coeffs()) {
    if (!a.coeffs().contains(p)) m = std::max(m, std::abs(c));
  }
  return m;
}

}  // namespace nct
