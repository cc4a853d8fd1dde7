#include "nctorus/connection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "nctorus/errors.hpp"

namespace nct {

using Eigen::MatrixXcd;

// ---------------------------------------------------------------------------
// ModuleElement

ModuleElement::ModuleElement(std::shared_ptr<const CoveringSpec> spec, int fiber_dim, int cap, double drop_tol)
    : spec_(std::move(spec)), fiber_dim_(fiber_dim), cap_(cap), drop_tol_(drop_tol) {
  if (!spec_) throw ContractViolation("module element needs a covering");
  if (fiber_dim < 1) throw ContractViolation("fiber dimension must be positive");
  if (cap < 0) throw ContractViolation("negative degree cap");
}

ModuleElement ModuleElement::from_components(std::shared_ptr<const CoveringSpec> spec,
                                             const std::vector<TorusElement>& components) {
  if (components.empty()) throw ContractViolation("from_components: no components");
  const auto& first = components.front();
  ModuleElement out(std::move(spec), static_cast<int>(components.size()), first.cap(), first.drop_tol());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (!(c.theta() == out.spec().theta_tilde()) || c.cap() != first.cap()) {
      throw ContractViolation("from_components: components must live in the covering algebra");
    }
    for (const auto& [p, v] : c.coeffs()) {
      auto& slot = out.coeffs_[p];
      if (slot.size() == 0) slot = FiberVector::Zero(out.fiber_dim_);
      slot[static_cast<Eigen::Index>(i)] = v;
    }
    out.mark_truncated(c.truncated());
  }
  return out;
}

FiberVector ModuleElement::coeff(const Mode& p) const {
  auto it = coeffs_.find(p);
  return it == coeffs_.end() ? FiberVector::Zero(fiber_dim_) : it->second;
}

void ModuleElement::set(const Mode& p, const FiberVector& x) {
  if (p.dim() != spec_->dim()) throw ContractViolation("mode dimension mismatch");
  if (p.degree() > cap_) throw ContractViolation("mode " + p.str() + " outside the degree cap");
  if (x.size() != fiber_dim_) throw ContractViolation("fiber vector has the wrong size");
  if (x.cwiseAbs().maxCoeff() < drop_tol_) {
    coeffs_.erase(p);
  } else {
    coeffs_[p] = x;
  }
}

void ModuleElement::add(const Mode& p, const FiberVector& x) { set(p, coeff(p) + x); }

TorusElement ModuleElement::component(int i) const {
  if (i < 0 || i >= fiber_dim_) throw ContractViolation("component index out of range");
  TorusElement out(spec_->theta_tilde_ptr(), cap_, drop_tol_);
  for (const auto& [p, x] : coeffs_) out.set(p, x[i]);
  out.mark_truncated(truncated_);
  return out;
}

double ModuleElement::max_abs() const {
  double m = 0.0;
  for (const auto& [p, x] : coeffs_) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

bool ModuleElement::compatible(const ModuleElement& other) const {
  return fiber_dim_ == other.fiber_dim_ && cap_ == other.cap_ &&
         (spec_ == other.spec_ || spec_->theta_tilde() == other.spec_->theta_tilde());
}

namespace {

ModuleElement combine(const ModuleElement& a, const ModuleElement& b, double sign) {
  if (!a.compatible(b)) throw ContractViolation("module elements are not compatible");
  ModuleElement out = a;
  for (const auto& [p, x] : b.coeffs()) out.add(p, sign * x);
  out.mark_truncated(b.truncated());
  return out;
}

}  // namespace

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b) { return combine(a, b, 1.0); }
ModuleElement operator-(const ModuleElement& a, const ModuleElement& b) { return combine(a, b, -1.0); }

ModuleElement operator*(Complex s, const ModuleElement& a) {
  ModuleElement out = a.zero_like();
  for (const auto& [p, x] : a.coeffs()) out.set(p, s * x);
  out.mark_truncated(a.truncated());
  return out;
}

double max_abs_diff(const ModuleElement& a, const ModuleElement& b) { return (a - b).max_abs(); }

ModuleElement random_module_element(std::shared_ptr<const CoveringSpec> spec, int fiber_dim, int cap, int degree,
                                    int terms, Rng& rng) {
  std::vector<TorusElement> comps;
  for (int i = 0; i < fiber_dim; ++i) comps.push_back(random_element(spec->theta_tilde_ptr(), cap, degree, terms, rng));
  return ModuleElement::from_components(std::move(spec), comps);
}

double OneFormValued::max_abs() const {
  double m = 0.0;
  for (const auto& c : components) m = std::max(m, c.max_abs());
  return m;
}

double TwoFormValued::max_abs() const {
  double m = 0.0;
  for (const auto& c : components) m = std::max(m, c.max_abs());
  return m;
}

OneFormValued operator+(const OneFormValued& a, const OneFormValued& b) {
  if (a.components.size() != b.components.size()) throw ContractViolation("one-form size mismatch");
  OneFormValued out;
  for (std::size_t j = 0; j < a.components.size(); ++j) out.components.push_back(a.components[j] + b.components[j]);
  return out;
}

OneFormValued operator-(const OneFormValued& a, const OneFormValued& b) {
  if (a.components.size() != b.components.size()) throw ContractViolation("one-form size mismatch");
  OneFormValued out;
  for (std::size_t j = 0; j < a.components.size(); ++j) out.components.push_back(a.components[j] - b.components[j]);
  return out;
}

double max_abs_diff(const OneFormValued& a, const OneFormValued& b) { return (a - b).max_abs(); }

// ---------------------------------------------------------------------------
// ModeProjector

ModeProjector::ModeProjector(Mode fold, std::vector<MatrixXcd> blocks) : fold_(fold), blocks_(std::move(blocks)) {
  std::size_t expected = 1;
  for (int j = 0; j < fold_.dim(); ++j) expected *= static_cast<std::size_t>(fold_[j]);
  if (blocks_.size() != expected) throw ContractViolation("projector needs one block per residue class");
  for (const auto& b : blocks_) {
    if (b.rows() != blocks_.front().rows() || b.cols() != b.rows()) {
      throw ContractViolation("projector blocks must be square of equal size");
    }
  }
}

std::size_t ModeProjector::linear(const Mode& residue) const {
  std::size_t idx = 0;
  for (int j = 0; j < fold_.dim(); ++j) {
    if (residue[j] < 0 || residue[j] >= fold_[j]) throw ContractViolation("residue out of range");
    idx = idx * static_cast<std::size_t>(fold_[j]) + static_cast<std::size_t>(residue[j]);
  }
  return idx;
}

std::vector<Mode> ModeProjector::residues() const {
  std::vector<Mode> out;
  Mode c(fold_.dim());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    out.push_back(c);
    for (int j = fold_.dim() - 1; j >= 0; --j) {
      if (++c[j] < fold_[j]) break;
      c[j] = 0;
    }
  }
  return out;
}

const MatrixXcd& ModeProjector::at(const Mode& residue) const { return blocks_[linear(residue)]; }

double ModeProjector::idempotent_defect() const {
  double worst = 0.0;
  for (const auto& p : blocks_) worst = std::max(worst, (p * p - p).cwiseAbs().maxCoeff());
  return worst;
}

double ModeProjector::self_adjoint_defect() const {
  double worst = 0.0;
  for (const auto& p : blocks_) worst = std::max(worst, (p.adjoint() - p).cwiseAbs().maxCoeff());
  return worst;
}

std::vector<int> ModeProjector::ranks() const {
  std::vector<int> out;
  for (const auto& p : blocks_) {
    Eigen::JacobiSVD<MatrixXcd> svd(p);
    const auto& s = svd.singularValues();
    out.push_back(static_cast<int>((s.array() > 0.5).count()));
  }
  return out;
}

ModeProjector ModeProjector::oblique(const std::vector<MatrixXcd>& x) const {
  if (x.size() != blocks_.size()) throw ContractViolation("oblique: one matrix per residue class");
  std::vector<MatrixXcd> out;
  const auto N = fiber_dim();
  for (std::size_t c = 0; c < blocks_.size(); ++c) {
    const MatrixXcd& p = blocks_[c];
    out.push_back(p + p * x[c] * (MatrixXcd::Identity(N, N) - p));
  }
  return ModeProjector(fold_, std::move(out));
}

ModeProjector mode_projector(const CoveringSpec& spec, const GroupRep& rep, double rep_tol) {
  const auto d = rep.defects(spec.fold());
  if (d.max() > rep_tol) {
    throw ContractViolation("invalid representation: order defect " + std::to_string(d.order) + ", commutator defect " +
                            std::to_string(d.commute) + ", unitarity defect " + std::to_string(d.unitary));
  }
  const auto N = rep.fiber_dim();
  std::vector<MatrixXcd> images;
  for (const auto& g : spec.elements()) images.push_back(rep(g));
  const double inv = 1.0 / static_cast<double>(spec.order());

  ModeProjector shape(spec.fold(), std::vector<MatrixXcd>(static_cast<std::size_t>(spec.order()), MatrixXcd::Zero(N, N)));
  std::vector<MatrixXcd> blocks;
  for (const Mode& c : shape.residues()) {
    MatrixXcd sum = MatrixXcd::Zero(N, N);
    for (std::size_t i = 0; i < images.size(); ++i) sum += spec.character(spec.elements()[i], c) * images[i];
    blocks.push_back(inv * sum);
  }
  return ModeProjector(spec.fold(), std::move(blocks));
}

ModuleElement project(const ModeProjector& e, const ModuleElement& xi) {
  if (!(e.fold() == xi.spec().fold()) || e.fiber_dim() != xi.fiber_dim()) {
    throw ContractViolation("project: projector does not match the module");
  }
  ModuleElement out = xi.zero_like();
  for (const auto& [p, x] : xi.coeffs()) out.set(p, e.at(xi.spec().residue(p)) * x);
  out.mark_truncated(xi.truncated());
  return out;
}

ModuleElement act_module(const CoveringSpec& spec, const GroupRep& rep, const GroupElement& g, const ModuleElement& xi) {
  if (rep.fiber_dim() != xi.fiber_dim()) throw ContractViolation("act_module: fiber dimension mismatch");
  const MatrixXcd rho = rep(g);
  ModuleElement out = xi.zero_like();
  for (const auto& [p, x] : xi.coeffs()) out.set(p, spec.character(g, p) * (rho * x));
  out.mark_truncated(xi.truncated());
  return out;
}

ModuleElement right_action(const ModuleElement& xi, const TorusElement& a) {
  const TorusElement image = embed(xi.spec(), a, xi.cap());
  std::vector<TorusElement> comps;
  for (int i = 0; i < xi.fiber_dim(); ++i) comps.push_back(mul(xi.component(i), image));
  ModuleElement out = ModuleElement::from_components(xi.spec_ptr(), comps);
  out.mark_truncated(xi.truncated() || image.truncated());
  return out;
}

OneFormValued trivial_connection(const ModuleElement& xi) {
  const CoveringSpec& spec = xi.spec();
  OneFormValued out;
  for (int j = 0; j < spec.dim(); ++j) {
    ModuleElement comp = xi.zero_like();
    for (const auto& [p, x] : xi.coeffs()) {
      const double eigen = 2.0 * std::numbers::pi * static_cast<double>(p[j]) / static_cast<double>(spec.fold()[j]);
      comp.set(p, Complex(0.0, eigen) * x);
    }
    comp.mark_truncated(xi.truncated());
    out.components.push_back(std::move(comp));
  }
  return out;
}

double membership_residual(const ModeProjector& e, const ModuleElement& xi) {
  return max_abs_diff(project(e, xi), xi) / std::max(1.0, xi.max_abs());
}

OneFormValued induced_connection(const ModeProjector& e, const ModuleElement& xi, double tol) {
  const double residual = membership_residual(e, xi);
  if (residual > tol) {
    throw ContractViolation("induced_connection: input is not in E (invariance residual " + std::to_string(residual) +
                            ")");
  }
  OneFormValued out = trivial_connection(xi);
  for (auto& c : out.components) c = project(e, c);
  return out;
}

TwoFormValued curvature_of(const IdempotentMap& e, const ModuleElement& xi) {
  const int n = xi.spec().dim();
  auto nabla = [&](const ModuleElement& v) {
    OneFormValued d = trivial_connection(v);
    for (auto& c : d.components) c = e(c);
    return d;
  };
  const OneFormValued first = nabla(xi);
  std::vector<OneFormValued> second;
  for (const auto& c : first.components) second.push_back(nabla(c));
  TwoFormValued out;
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      // ∇_j∇_l ξ − ∇_l∇_j ξ
      out.components.push_back(second[static_cast<std::size_t>(l)].components[static_cast<std::size_t>(j)] -
                               second[static_cast<std::size_t>(j)].components[static_cast<std::size_t>(l)]);
    }
  }
  return out;
}

TwoFormValued curvature(const ModeProjector& e, const ModuleElement& xi, double tol) {
  const double residual = membership_residual(e, xi);
  if (residual > tol) {
    throw ContractViolation("curvature: input is not in E (invariance residual " + std::to_string(residual) + ")");
  }
  return curvature_of([&e](const ModuleElement& v) { return project(e, v); }, xi);
}

// ---------------------------------------------------------------------------
// MatrixIdempotent

MatrixIdempotent::MatrixIdempotent(std::shared_ptr<const CoveringSpec> spec, int fiber_dim,
                                   std::vector<TorusElement> entries)
    : spec_(std::move(spec)), fiber_dim_(fiber_dim), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(fiber_dim) * static_cast<std::size_t>(fiber_dim)) {
    throw ContractViolation("matrix idempotent needs N*N entries");
  }
}

MatrixIdempotent MatrixIdempotent::rank_one(std::shared_ptr<const CoveringSpec> spec, const TorusElement& b,
                                            const TorusElement& c) {
  const TorusElement one = TorusElement::unit(b.theta_ptr(), b.cap(), b.drop_tol());
  const TorusElement w1 = one - mul(b, c);
  return MatrixIdempotent(std::move(spec), 2, {w1, b, mul(c, w1), mul(c, b)});
}

ModuleElement MatrixIdempotent::apply(const ModuleElement& xi) const {
  if (xi.fiber_dim() != fiber_dim_) throw ContractViolation("matrix idempotent: fiber dimension mismatch");
  std::vector<TorusElement> in;
  for (int k = 0; k < fiber_dim_; ++k) in.push_back(xi.component(k));
  std::vector<TorusElement> out;
  for (int i = 0; i < fiber_dim_; ++i) {
    TorusElement acc = in.front().zero_like();
    for (int k = 0; k < fiber_dim_; ++k) {
      const auto& entry = entries_[static_cast<std::size_t>(i * fiber_dim_ + k)];
      // Entries may carry a smaller cap than ξ; lift them into ξ's window.
      TorusElement lifted = acc.zero_like();
      for (const auto& [p, v] : entry.coeffs()) lifted.set(p, v);
      acc = acc + mul(lifted, in[static_cast<std::size_t>(k)]);
    }
    out.push_back(std::move(acc));
  }
  return ModuleElement::from_components(spec_, out);
}

// ---------------------------------------------------------------------------
// Holonomy

HolonomyReport holonomy_spectrum(const CoveringSpec& spec, const GroupRep& rep) {
  if (!spec.theta().is_zero() || !spec.theta_tilde().is_zero()) throw ContractViolation("Θ ≠ 0");
  const ModeProjector e = mode_projector(spec, rep);
  const int n = spec.dim();
  const auto N = rep.fiber_dim();
  HolonomyReport report;

  const auto residues = e.residues();
  const auto ranks = e.ranks();
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (ranks[i] == 0) continue;
    HolonomyClass cls;
    cls.residue = residues[i];
    cls.rank = ranks[i];
    const MatrixXcd& p = e.blocks()[i];
    for (int j = 0; j < n; ++j) {
      cls.frequency_offset.push_back(Rational(residues[i][j], spec.fold()[j]));
      const Complex h = unit_root(-residues[i][j], spec.fold()[j]);
      cls.holonomy.push_back(h);
      const MatrixXcd& r = rep.generators()[static_cast<std::size_t>(j)];
      report.defect = std::max(report.defect, (r * p - h * p).cwiseAbs().maxCoeff());
    }
    report.total_rank += cls.rank;
    report.classes.push_back(std::move(cls));
  }
  if (report.total_rank != N) report.defect = std::max(report.defect, 1.0);

  for (int j = 0; j < n; ++j) {
    Eigen::ComplexEigenSolver<MatrixXcd> solver(rep.generators()[static_cast<std::size_t>(j)]);
    std::vector<Complex> spectrum(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(spectrum.begin(), spectrum.end(), [](Complex a, Complex b) {
      auto angle = [](Complex z) {
        double t = std::arg(z);
        return t < -1e-9 ? t + 2.0 * std::numbers::pi : std::max(t, 0.0);
      };
      return angle(a) < angle(b);
    });
    // Match the rank-weighted holonomies to the spectrum (nearest unused eigenvalue).
    std::vector<bool> used(spectrum.size(), false);
    for (const auto& cls : report.classes) {
      for (int t = 0; t < cls.rank; ++t) {
        double best = 2.0;
        std::size_t at = spectrum.size();
        for (std::size_t s = 0; s < spectrum.size(); ++s) {
          if (used[s]) continue;
          const double dist = std::abs(spectrum[s] - cls.holonomy[static_cast<std::size_t>(j)]);
          if (dist < best) {
            best = dist;
            at = s;
          }
        }
        if (at == spectrum.size()) {
          report.defect = std::max(report.defect, 1.0);
          continue;
        }
        used[at] = true;
        report.defect = std::max(report.defect, best);
      }
    }
    report.generator_spectra.push_back(std::move(spectrum));
  }
  return report;
}

}  // namespace nct
