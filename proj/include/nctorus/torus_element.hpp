#pragma once

#include <complex>
#include <map>
#include <memory>

#include "nctorus/mode.hpp"
#include "nctorus/theta.hpp"

namespace nct {

using Complex = std::complex<double>;

inline constexpr double kDefaultDropTolerance = 1e-15;

// Finitely supported Fourier series Σ a_p U^p over the smooth noncommutative
// torus with deformation Θ, truncated to the box [-cap, cap]ⁿ. Coefficients with
// |a_p| < drop_tol are never stored.
class TorusElement {
 public:
  using Coeffs = std::map<Mode, Complex>;

  TorusElement(std::shared_ptr<const ThetaMatrix> theta, int cap,
               double drop_tol = kDefaultDropTolerance);

  static TorusElement unit(std::shared_ptr<const ThetaMatrix> theta, int cap,
                           double drop_tol = kDefaultDropTolerance);
  static TorusElement monomial(std::shared_ptr<const ThetaMatrix> theta, int cap, const Mode& p,
                               Complex coeff = 1.0, double drop_tol = kDefaultDropTolerance);

  const ThetaMatrix& theta() const { return *theta_; }
  const std::shared_ptr<const ThetaMatrix>& theta_ptr() const { return theta_; }
  int dim() const { return theta_->dim(); }
  int cap() const { return cap_; }
  double drop_tol() const { return drop_tol_; }

  const Coeffs& coeffs() const { return coeffs_; }
  Complex coeff(const Mode& p) const;
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

  // Sets a_p (replacing any previous value). Dropped if below the drop tolerance;
  // modes outside the window are a contract violation.
  void set(const Mode& p, Complex value);
  // a_p += value
  void add(const Mode& p, Complex value);

  // True if some product that produced this element lost modes outside the window.
  bool truncated() const { return truncated_; }
  void mark_truncated(bool flag = true) { truncated_ = truncated_ || flag; }

  double max_abs() const;
  int degree() const;

  bool same_algebra(const TorusElement& other) const;
  // Empty element over the same algebra.
  TorusElement zero_like() const { return TorusElement(theta_, cap_, drop_tol_); }

 private:
  std::shared_ptr<const ThetaMatrix> theta_;
  int cap_;
  double drop_tol_;
  Coeffs coeffs_;
  bool truncated_ = false;
};

// Twisted convolution c_r = Σ_{p+q=r} σ(p,q) a_p b_q; modes leaving the window are
// discarded and the truncation flag is set. OpenMP-parallel over output modes with
// a fixed per-mode summation order (increasing p), so results are deterministic.
TorusElement mul(const TorusElement& a, const TorusElement& b);

// Serial pairwise reference for mul; same summation order, kept for testing and
// benchmarking.
TorusElement mul_reference(const TorusElement& a, const TorusElement& b);

// a* with (a*)_{-p} = conj(a_p)·conj(σ(p,-p)), so that (U^p)*U^p = 1.
TorusElement adjoint(const TorusElement& a);

// δ_j(a)_p = (2πi p_j / fold)·a_p, 0-based axis. fold = 1 is the standard derivation.
TorusElement derivation(const TorusElement& a, int axis, int fold = 1);

// Canonical trace: the coefficient at mode 0.
Complex trace(const TorusElement& a);

TorusElement operator+(const TorusElement& a, const TorusElement& b);
TorusElement operator-(const TorusElement& a, const TorusElement& b);
TorusElement operator*(Complex s, const TorusElement& a);
inline TorusElement operator*(const TorusElement& a, const TorusElement& b) { return mul(a, b); }

// max_p |a_p - b_p| over the union of supports.
double max_abs_diff(const TorusElement& a, const TorusElement& b);

}  // namespace nct
