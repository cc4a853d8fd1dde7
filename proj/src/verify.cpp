#include "nctorus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "nctorus/connection.hpp"
#include "nctorus/dirac.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/random.hpp"

namespace nct {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kOrthogonalityTol = 1e-13;
constexpr double kCommutativeTol = 1e-14;
constexpr double kRepTol = 1e-12;
constexpr double kNegativeMargin = 1e-3;

const char* kProvAlgebra = "twisted convolution algebra laws";
const char* kProvCongruence = "covering relation: theta~_rs k_r k_s - theta_rs is an integer";
const char* kProvCovering = "covering triple: embedding, deck action, conditional expectation";
const char* kProvFree = "covering algebra is a free module of rank |G| over the base";
const char* kProvHilbert = "Hilbert module inner product <a,b> = sum_g g(a* b)";
const char* kProvLift = "lift of the base spectral triple to the covering";
const char* kProvRep = "representation relations R_j^k_j = 1, commuting, unitary";
const char* kProvProjector = "averaging idempotent e = (1/|G|) sum_g g";
const char* kProvLeibniz = "connection Leibniz rule nabla(xi a) = nabla(xi) a + xi da";
const char* kProvFlat = "induced connection is flat";
const char* kProvHolonomy = "classical flat line bundle holonomy";

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string complex_str(Complex z) {
  // "re,im" with signed zeros folded.
  auto clean = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
  return fmt("%.12f", clean(z.real())) + "," + fmt("%.12f", clean(z.imag()));
}

std::string theta_str(const ThetaMatrix& t) {
  if (t.dim() == 1) return "(none)";
  std::string s;
  for (int r = 1; r < t.dim(); ++r)
    for (int q = 0; q < r; ++q) {
      if (!s.empty()) s += " ";
      s += "theta." + std::to_string(r + 1) + "." + std::to_string(q + 1) + "=" + t(r, q).str();
    }
  return s;
}

std::string offsets_str(const std::vector<std::int64_t>& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

Report header(const char* command, const Manifest& m) {
  Report r;
  r.command = command;
  r.manifest = m.source;
  r.seed = m.seed;
  r.note("n = " + std::to_string(m.n) + ", k = " + m.fold.str() + ", M = " + std::to_string(m.cap) +
         ", rep = " + m.rep.str());
  r.note("theta: " + theta_str(*m.theta()));
  return r;
}

int safe_half(int cap) { return std::max(1, cap / 2); }

// ---------------------------------------------------------------- covering branches

std::vector<CoveringSpec> cover_suite(Report& r, const Manifest& m, const RunOptions& opt) {
  std::vector<CoveringSpec> branches;
  if (m.enumerate) {
    branches = enumerate_covers(m.theta(), m.fold, opt.enumerate_cap);
    std::int64_t expected = 1;
    for (int a = 1; a < m.n; ++a)
      for (int b = 0; b < a; ++b) expected *= static_cast<std::int64_t>(m.fold[a]) * m.fold[b];
    r.expect_at_most("cover.branch_count",
                     static_cast<double>(std::llabs(static_cast<std::int64_t>(branches.size()) - expected)), 0.0,
                     kProvCongruence)
        .detail = std::to_string(branches.size()) + " branches";
  } else {
    branches.push_back(m.covering());
  }
  for (const auto& spec : branches) {
    r.note("branch m = " + offsets_str(spec.offsets()) + ": " + theta_str(spec.theta_tilde()));
    int bad = 0;
    for (const Rational& d : spec.congruence_defects()) bad += d.is_integer() ? 0 : 1;
    r.expect_at_most("cover.congruence m=" + offsets_str(spec.offsets()), bad, 0.0, kProvCongruence);
  }
  return branches;
}

// ---------------------------------------------------------------- algebra laws

TorusElement plain_convolution(const TorusElement& a, const TorusElement& b) {
  std::map<Mode, Complex> acc;
  for (const auto& [p, x] : a.coeffs())
    for (const auto& [q, y] : b.coeffs()) acc[p + q] += x * y;
  TorusElement out = a.zero_like();
  for (const auto& [p, z] : acc)
    if (p.degree() <= out.cap()) out.set(p, z);
  return out;
}

void algebra_suite(Report& r, const std::shared_ptr<const ThetaMatrix>& theta, int cap, int samples, Rng& rng) {
  const int n = theta->dim();
  const int half = safe_half(cap);
  const int third = std::max(1, cap / 3);
  const auto one = TorusElement::unit(theta, cap);

  double unit = 0, cocyc = 0, assoc = 0, star = 0, invol = 0, tr = 0, pos = 0, leib = 0, dstar = 0, comm = 0;
  for (int s = 0; s < samples; ++s) {
    const auto a = random_element(theta, cap, half, 8, rng);
    const auto b = random_element(theta, cap, half, 8, rng);
    unit = std::max({unit, max_abs_diff(mul(one, a), a), max_abs_diff(mul(a, one), a)});

    Mode p(n), q(n), t(n);
    for (int j = 0; j < n; ++j) {
      p[j] = static_cast<int>(rng.uniform_int(-cap, cap));
      q[j] = static_cast<int>(rng.uniform_int(-cap, cap));
      t[j] = static_cast<int>(rng.uniform_int(-cap, cap));
    }
    cocyc = std::max(cocyc, std::abs(cocycle(*theta, p, q) * cocycle(*theta, p + q, t) -
                                     cocycle(*theta, q, t) * cocycle(*theta, p, q + t)));

    const auto x = random_element(theta, cap, third, 6, rng);
    const auto y = random_element(theta, cap, third, 6, rng);
    const auto z = random_element(theta, cap, third, 6, rng);
    const auto xyz = mul(x, mul(y, z));
    assoc = std::max(assoc, relative_residual(max_abs_diff(mul(mul(x, y), z), xyz), xyz.max_abs()));

    const auto ab = mul(a, b);
    const auto ba_star = mul(adjoint(b), adjoint(a));
    star = std::max(star, relative_residual(max_abs_diff(adjoint(ab), ba_star), ba_star.max_abs()));
    invol = std::max(invol, relative_residual(max_abs_diff(adjoint(adjoint(a)), a), a.max_abs()));
    tr = std::max(tr, relative_residual(std::abs(trace(ab) - trace(mul(b, a))), std::abs(trace(ab))));
    pos = std::max(pos, -trace(mul(adjoint(a), a)).real());

    for (int j = 0; j < n; ++j) {
      const auto rhs = mul(derivation(a, j), b) + mul(a, derivation(b, j));
      leib = std::max(leib, relative_residual(max_abs_diff(derivation(ab, j), rhs), rhs.max_abs()));
      const auto da = derivation(a, j);
      dstar = std::max(dstar, relative_residual(max_abs_diff(derivation(adjoint(a), j), adjoint(da)), da.max_abs()));
    }
    if (theta->is_zero()) {
      const auto plain = plain_convolution(a, b);
      comm = std::max(comm, relative_residual(max_abs_diff(ab, plain), plain.max_abs()));
    }
  }
  r.expect_at_most("algebra.unit", unit, 0.0, kProvAlgebra);
  r.expect_at_most("algebra.cocycle_identity", cocyc, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.associativity", assoc, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.star_antimultiplicative", star, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.star_involution", invol, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.trace_property", tr, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.positivity", std::max(0.0, pos), kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.derivation_leibniz", leib, kIdentityTol, kProvAlgebra);
  r.expect_at_most("algebra.derivation_star", dstar, kIdentityTol, kProvAlgebra);
  if (theta->is_zero()) {
    r.expect_at_most("algebra.commutative_convolution", comm, kCommutativeTol, kProvAlgebra);
  } else {
    r.skip("algebra.commutative_convolution", "theta != 0", kProvAlgebra);
  }
}

// ---------------------------------------------------------------- covering laws and Hilbert product

void covering_suite(Report& r, const CoveringSpec& spec, int cap, int samples, Rng& rng) {
  const int half = safe_half(cap);
  const int cover = spec.cover_cap(cap);
  double hom = 0, star = 0, aut = 0, group = 0, section = 0;
  for (int s = 0; s < samples; ++s) {
    const auto a = random_element(spec.theta_ptr(), cap, half, 8, rng);
    const auto b = random_element(spec.theta_ptr(), cap, half, 8, rng);
    const auto prod = mul(embed(spec, a), embed(spec, b));
    hom = std::max(hom, relative_residual(max_abs_diff(embed(spec, mul(a, b)), prod), prod.max_abs()));
    star = std::max(star, relative_residual(max_abs_diff(embed(spec, adjoint(a)), adjoint(embed(spec, a))), a.max_abs()));
    const auto full = random_element(spec.theta_ptr(), cap, cap, 12, rng);
    section = std::max(section, relative_residual(max_abs_diff(conditional_expectation(spec, embed(spec, full)), full),
                                                  full.max_abs()));

    const auto x = random_element(spec.theta_tilde_ptr(), cover, cover / 2, 8, rng);
    const auto y = random_element(spec.theta_tilde_ptr(), cover, cover / 2, 8, rng);
    const auto xy = mul(x, y);
    for (const auto& g : spec.elements()) {
      const auto rhs = mul(act(spec, g, x), act(spec, g, y));
      aut = std::max(aut, relative_residual(max_abs_diff(act(spec, g, xy), rhs), rhs.max_abs()));
    }
    const auto& els = spec.elements();
    const auto& g = els[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(els.size()) - 1))];
    const auto& h = els[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(els.size()) - 1))];
    group = std::max(group, max_abs_diff(act(spec, g, act(spec, h, x)), act(spec, spec.compose(g, h), x)));
  }
  r.expect_at_most("cover.embed_homomorphism", hom, kIdentityTol, kProvCovering);
  r.expect_at_most("cover.embed_star", star, kIdentityTol, kProvCovering);
  r.expect_at_most("cover.action_automorphism", aut, kIdentityTol, kProvCovering);
  r.expect_at_most("cover.action_group_law", group, kIdentityTol, kProvCovering);
  r.expect_at_most("cover.expectation_section", section, kIdentityTol, kProvCovering);

  const auto fr = free_rank(spec, 2 * spec.max_fold());
  r.expect_at_most("cover.free_rank", static_cast<double>(std::llabs(fr.classes - spec.order())), 0.0, kProvFree)
      .detail = std::to_string(fr.classes) + " classes";
  r.expect_at_most("cover.free_rank_split", fr.max_defect, kIdentityTol, kProvFree);
}

void hilbert_suite(Report& r, const CoveringSpec& spec, int cap, int samples, Rng& rng) {
  const int n = spec.dim();
  const int cover = spec.cover_cap(cap);
  const auto one = TorusElement::unit(spec.theta_tilde_ptr(), cover);
  const auto expected = static_cast<double>(spec.order()) * TorusElement::unit(spec.theta_ptr(), cap);
  r.expect_at_most("hilbert.unit", max_abs_diff(hilbert_product(spec, one, one), expected), 0.0, kProvHilbert);

  const int radius = std::min(2, cover / 2);
  double ortho = 0.0;
  int tested = 0;
  for (int s = 0; s < 40 * samples; ++s) {
    Mode p(n), q(n);
    for (int j = 0; j < n; ++j) {
      p[j] = static_cast<int>(rng.uniform_int(-radius, radius));
      q[j] = static_cast<int>(rng.uniform_int(-radius, radius));
    }
    if (spec.divisible(p - q)) continue;
    ++tested;
    const auto up = TorusElement::monomial(spec.theta_tilde_ptr(), cover, p);
    const auto uq = TorusElement::monomial(spec.theta_tilde_ptr(), cover, q);
    ortho = std::max(ortho, hilbert_product(spec, up, uq).max_abs());
  }
  r.expect_at_most("hilbert.orthogonality", ortho, kOrthogonalityTol, kProvHilbert).detail =
      std::to_string(tested) + " pairs";

  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto a = random_element(spec.theta_tilde_ptr(), cover, cover / 2, 12, rng);
    worst = std::max(worst, -trace(hilbert_product(spec, a, a)).real());
  }
  r.expect_at_most("hilbert.positivity", std::max(0.0, worst), kIdentityTol, kProvHilbert);
}

// ---------------------------------------------------------------- lift

void lift_suite(Report& r, const CoveringSpec& spec, const RunOptions& opt, std::uint64_t seed) {
  const int n = spec.dim();
  if (n > 3) {
    r.skip("lift.condition_b", "window too large for n > 3", kProvLift);
    r.skip("lift.condition_c", "window too large for n > 3", kProvLift);
    return;
  }
  const int base_cap = n == 1 ? 8 : (n == 2 ? 4 : 2);
  const auto Db = DiracOperator::base(n, base_cap);
  const auto Dc = DiracOperator::covering(spec, spec.cover_cap(base_cap));
  const auto lift = check_lift(spec, Db, Dc, seed);
  r.note("lift: base window " + std::to_string(base_cap) + ", " + lift.convention);
  r.expect_at_most("lift.condition_b", lift.residual_b, lift.tolerance, kProvLift);
  r.expect_at_most("lift.condition_c", lift.residual_c, lift.tolerance, kProvLift);
  if (opt.negative_control) {
    const auto wrong = DiracOperator::covering(spec, spec.cover_cap(base_cap), DiracScaling::Unscaled);
    r.expect_failure("lift.negative_control_unscaled", check_lift(spec, Db, wrong, seed).residual_b, lift.tolerance,
                     1.0, kProvLift);
  }
}

// ---------------------------------------------------------------- connection

struct Bundle {
  std::shared_ptr<const CoveringSpec> spec;
  std::optional<GroupRep> rep;
  std::optional<ModeProjector> e;
};

// Representation and projector checks; returns a bundle without `e` when the rep is invalid.
Bundle projector_suite(Report& r, const Manifest& m, const CoveringSpec& spec_value) {
  Bundle b;
  b.spec = std::make_shared<const CoveringSpec>(spec_value);
  try {
    b.rep = m.representation(*b.spec);
  } catch (const ContractViolation& ex) {
    r.expect_at_most("rep.relations", std::numeric_limits<double>::infinity(), kRepTol, kProvRep).detail = ex.what();
    return b;
  }
  const auto d = b.rep->defects(b.spec->fold());
  auto& rel = r.expect_at_most("rep.relations", d.max(), kRepTol, kProvRep);
  rel.detail = "order " + fmt("%.3e", d.order) + ", commute " + fmt("%.3e", d.commute) + ", unitary " +
               fmt("%.3e", d.unitary);
  if (rel.status == Status::Fail) return b;

  b.e = mode_projector(*b.spec, *b.rep, kRepTol);
  r.expect_at_most("projector.idempotent", b.e->idempotent_defect(), kIdentityTol, kProvProjector);
  r.expect_at_most("projector.self_adjoint", b.e->self_adjoint_defect(), kIdentityTol, kProvProjector);
  const auto ranks = b.e->ranks();
  const auto residues = b.e->residues();
  std::string profile;
  int total = 0;
  int worst_regular = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    profile += (i ? "," : "") + std::to_string(ranks[i]);
    total += ranks[i];
    worst_regular = std::max(worst_regular, std::abs(ranks[i] - 1));
    r.note("rank P_c, c = " + residues[i].str() + ": " + std::to_string(ranks[i]));
  }
  r.note("rank profile: (" + profile + ")");
  r.expect_at_most("projector.total_rank", std::abs(total - b.rep->fiber_dim()), 0.0, kProvProjector);
  if (m.rep.kind == RepSpec::Kind::Regular) {
    r.expect_at_most("projector.regular_rank_one", worst_regular, 0.0, kProvProjector);
  }
  return b;
}

void connection_suite(Report& r, const Bundle& b, const Manifest& m, const RunOptions& opt, Rng& rng,
                      bool leibniz, bool curvature) {
  if (!b.e) {
    if (leibniz) r.skip("connection.leibniz", "representation invalid", kProvLeibniz);
    if (curvature) r.skip("curvature.flat", "representation invalid", kProvFlat);
    return;
  }
  const auto s = sample_connection(b.spec, *b.rep, m.cap, opt.samples, rng);
  if (leibniz) {
    r.expect_at_most("connection.leibniz", s.truncated ? std::numeric_limits<double>::infinity() : s.max_leibniz,
                     kIdentityTol, kProvLeibniz)
        .detail = std::to_string(opt.samples) + " samples";
  }
  if (curvature) {
    if (b.spec->dim() == 1) r.note("curvature: n = 1 has no two-forms");
    r.expect_at_most("curvature.flat", s.max_curvature, m.assert_tol, kProvFlat).detail =
        std::to_string(opt.samples) + " samples";
  }
}

void negative_control_suite(Report& r, const Bundle& b, const Manifest& m, Rng& rng) {
  if (b.spec->dim() < 2) {
    r.skip("curvature.negative_control", "n = 1 has no two-forms", kProvFlat);
    return;
  }
  r.expect_failure("curvature.negative_control", negative_control_curvature(b.spec, m.cap, rng), m.assert_tol,
                   kNegativeMargin, kProvFlat)
      .detail = "non-constant idempotent v w^T over the covering algebra";
}

void holonomy_suite(Report& r, const Bundle& b) {
  if (!b.spec->theta().is_zero()) {
    r.skip("holonomy.classical", "Θ ≠ 0", kProvHolonomy);
    return;
  }
  if (!b.spec->theta_tilde().is_zero()) {
    r.skip("holonomy.classical", "Θ̃ ≠ 0", kProvHolonomy);
    return;
  }
  if (!b.e) {
    r.skip("holonomy.classical", "representation invalid", kProvHolonomy);
    return;
  }
  const auto h = holonomy_spectrum(*b.spec, *b.rep);
  for (const auto& c : h.classes) {
    std::string freq, hol;
    for (std::size_t j = 0; j < c.frequency_offset.size(); ++j) {
      freq += (j ? " x " : "") + std::string("Z+") + c.frequency_offset[j].str();
      hol += (j ? " " : "") + complex_str(c.holonomy[j]);
    }
    r.note("holonomy class " + c.residue.str() + " rank " + std::to_string(c.rank) + ": frequencies " + freq +
           ", holonomy " + hol);
  }
  for (std::size_t j = 0; j < h.generator_spectra.size(); ++j) {
    std::string spec;
    for (const auto& z : h.generator_spectra[j]) spec += (spec.empty() ? "" : " ") + complex_str(z);
    r.note("spectrum R_" + std::to_string(j + 1) + ": " + spec);
  }
  r.expect_at_most("holonomy.classical", h.defect, kIdentityTol, kProvHolonomy);
}

CoveringSpec single_branch(Report& r, const Manifest& m, const std::vector<CoveringSpec>& branches) {
  if (!m.enumerate) return branches.front();
  r.note("suites below use branch m = " + offsets_str(branches.front().offsets()));
  return branches.front();
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skip:
      return "SKIP";
    case Status::ExpectedFail:
      return "EXPECTED-FAIL";
  }
  return "?";
}

double relative_residual(double diff, double scale) { return diff / std::max(1.0, scale); }

Check& Report::expect_at_most(std::string name, double residual, double tolerance, std::string provenance) {
  const bool pass = residual <= tolerance;  // false for NaN
  checks.push_back({std::move(name), residual, tolerance, pass ? Status::Pass : Status::Fail, std::move(provenance), ""});
  return checks.back();
}

void Report::skip(std::string name, std::string reason, std::string provenance) {
  checks.push_back({std::move(name), 0.0, 0.0, Status::Skip, std::move(provenance), std::move(reason)});
}

Check& Report::expect_failure(std::string name, double residual, double tolerance, double margin,
                              std::string provenance) {
  const bool teeth = residual > margin && residual > tolerance;
  checks.push_back({std::move(name), residual, tolerance, teeth ? Status::ExpectedFail : Status::Fail,
                    std::move(provenance), ""});
  return checks.back();
}

int Report::count(Status s) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

std::string Report::text() const {
  std::string out = "command: " + command + "\nmanifest: " + manifest + "\nseed: " + std::to_string(seed) + "\n";
  for (const auto& n : notes) out += "  " + n + "\n";
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    std::string line = status_name(c.status);
    line.resize(14, ' ');
    std::string name = c.name;
    name.resize(width + 2, ' ');
    line += name;
    if (c.status == Status::Skip) {
      line += "skipped: " + c.detail;
    } else {
      line += "residual " + fmt("%.3e", c.residual) + "  tol " + fmt("%.3e", c.tolerance);
      if (!c.detail.empty()) line += "  [" + c.detail + "]";
    }
    out += line + "\n      certifies: " + c.provenance + "\n";
  }
  out += "summary: " + std::to_string(count(Status::Pass)) + " pass, " + std::to_string(count(Status::Fail)) +
         " fail, " + std::to_string(count(Status::Skip)) + " skip, " + std::to_string(count(Status::ExpectedFail)) +
         " expected-fail\n";
  return out;
}

nlohmann::ordered_json Report::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["manifest"] = manifest;
  j["seed"] = seed;
  j["notes"] = notes;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    if (c.status != Status::Skip) {
      e["residual"] = c.residual;
      e["tolerance"] = c.tolerance;
    }
    e["provenance"] = c.provenance;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["summary"] = {{"pass", count(Status::Pass)},
                  {"fail", count(Status::Fail)},
                  {"skip", count(Status::Skip)},
                  {"expected_fail", count(Status::ExpectedFail)},
                  {"ok", ok()}};
  return j;
}

CurvatureSample sample_connection(const std::shared_ptr<const CoveringSpec>& spec, const GroupRep& rep, int base_cap,
                                  int samples, Rng& rng) {
  const auto e = mode_projector(*spec, rep, kRepTol);
  const int cap = spec->cover_cap(base_cap);
  CurvatureSample out;
  for (int s = 0; s < samples; ++s) {
    const auto xi = project(e, random_module_element(spec, rep.fiber_dim(), cap, cap / 2, 10, rng));
    out.max_curvature = std::max(out.max_curvature, curvature(e, xi).max_abs());

    const auto a = random_element(spec->theta_ptr(), base_cap, safe_half(base_cap), 6, rng);
    const auto xa = right_action(xi, a);
    const auto lhs = induced_connection(e, xa);
    const auto nabla = induced_connection(e, xi);
    out.truncated = out.truncated || xa.truncated();
    for (int j = 0; j < spec->dim(); ++j) {
      const auto rhs = right_action(nabla.components[static_cast<std::size_t>(j)], a) +
                       right_action(xi, derivation(a, j));
      out.truncated = out.truncated || rhs.truncated();
      out.max_leibniz = std::max(
          out.max_leibniz,
          relative_residual(max_abs_diff(lhs.components[static_cast<std::size_t>(j)], rhs), rhs.max_abs()));
    }
  }
  return out;
}

double negative_control_curvature(const std::shared_ptr<const CoveringSpec>& spec, int base_cap, Rng& rng) {
  if (spec->dim() < 2) throw ContractViolation("negative control needs n >= 2");
  const int cap = spec->cover_cap(base_cap);
  const auto b = TorusElement::monomial(spec->theta_tilde_ptr(), cap, Mode::unit(spec->dim(), 0));
  const auto c = TorusElement::monomial(spec->theta_tilde_ptr(), cap, Mode::unit(spec->dim(), 1));
  const auto e = MatrixIdempotent::rank_one(spec, b, c);
  const auto xi = e.apply(random_module_element(spec, 2, cap, 2, 6, rng));
  return curvature_of([&](const ModuleElement& v) { return e.apply(v); }, xi).max_abs();
}

Report cmd_cover(const Manifest& m, const RunOptions& opt) {
  Report r = header("cover", m);
  cover_suite(r, m, opt);
  return r;
}

Report cmd_connection(const Manifest& m, const RunOptions& opt) {
  Report r = header("connection", m);
  Rng rng(m.seed);
  const auto b = projector_suite(r, m, m.covering());
  connection_suite(r, b, m, opt, rng, true, false);
  return r;
}

Report cmd_curvature(const Manifest& m, const RunOptions& opt) {
  Report r = header("curvature", m);
  Rng rng(m.seed);
  const auto b = projector_suite(r, m, m.covering());
  connection_suite(r, b, m, opt, rng, false, true);
  if (opt.negative_control) negative_control_suite(r, b, m, rng);
  return r;
}

Report cmd_verify(const Manifest& m, const RunOptions& opt) {
  Report r = header("verify", m);
  Rng rng(m.seed);
  const auto branches = cover_suite(r, m, opt);
  const auto spec = single_branch(r, m, branches);
  algebra_suite(r, spec.theta_ptr(), m.cap, opt.samples, rng);
  covering_suite(r, spec, m.cap, opt.samples, rng);
  hilbert_suite(r, spec, m.cap, opt.samples, rng);
  lift_suite(r, spec, opt, m.seed);
  const auto b = projector_suite(r, m, spec);
  connection_suite(r, b, m, opt, rng, true, true);
  if (opt.negative_control) negative_control_suite(r, b, m, rng);
  holonomy_suite(r, b);
  return r;
}

}  // namespace nct
