#include <doctest.h>

#include <sstream>

#include "nctorus/errors.hpp"
#include "nctorus/manifest.hpp"
#include "nctorus/verify.hpp"

using namespace nct;

namespace {

Manifest parse(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in, "test");
}

void check_error(const std::string& text, int line, const std::string& field) {
  try {
    parse(text);
    FAIL("no error for: " << text);
  } catch (const ManifestError& e) {
    CHECK(e.line() == line);
    CHECK(e.field() == field);
  }
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

const char* kCommutative = "n = 1\nk = 2\nrep = sign\n";
const char* kNoncommutative = "n = 2\ntheta.2.1 = 1/5\nk = 2 3\nm.2.1 = 0\nrep = random:2\nseed = 7\n";

}  // namespace

TEST_CASE("manifest: defaults and every key") {
  const auto m = parse("# comment\nn = 3\ntheta.2.1 = 1/5  # trailing\ntheta.3.2 = -2/7\nk = 2 1 3\n"
                       "m.3.1 = 4\nrep = cyclic:3\nM = 6\ntol.drop = 1e-14\ntol.assert = 1e-9\nseed = 99\n");
  CHECK(m.n == 3);
  CHECK(m.theta_lower == std::vector<Rational>{Rational(1, 5), Rational(0), Rational(-2, 7)});
  CHECK(m.fold == Mode{2, 1, 3});
  CHECK(m.offsets == std::vector<std::int64_t>{0, 4, 0});
  CHECK(m.rep.kind == RepSpec::Kind::Cyclic);
  CHECK(m.rep.axis == 2);
  CHECK(m.cap == 6);
  CHECK(m.drop_tol == 1e-14);
  CHECK(m.assert_tol == 1e-9);
  CHECK(m.seed == 99);

  const auto d = parse(kCommutative);
  CHECK(d.cap == 8);
  CHECK(d.drop_tol == 1e-15);
  CHECK(d.assert_tol == 1e-10);
  CHECK_FALSE(d.enumerate);
  CHECK(d.covering().theta_tilde().is_zero());

  const auto e = parse("n = 2\nk = 2 3\nm = enumerate\ntheta.2.1 = 1/5\n");
  CHECK(e.enumerate);
  CHECK_THROWS_AS(e.covering(), ContractViolation);

  const auto mat = parse("n = 1\nk = 2\nrep = matrix:2\nrep.R.1 = 0,0 1,0; 1,0 0,0\n");
  REQUIRE(mat.rep.matrices.size() == 1);
  CHECK(mat.rep.matrices[0](0, 1) == Complex(1.0, 0.0));
  CHECK(mat.representation(mat.covering()).defects(mat.fold).max() == 0.0);
}

TEST_CASE("manifest: errors carry line and field") {
  check_error("n = 2\ntheta.2.1 = 1/0\nk = 2 3\n", 2, "theta.2.1");
  check_error("n = 2\ntheta.2.1 = abc\nk = 2 3\n", 2, "theta.2.1");
  check_error("n = 2\ntheta.1.2 = 1/3\nk = 2 3\n", 2, "theta.1.2");
  check_error("n = 2\nk = 2\n", 2, "k");
  check_error("n = 2\nk = 2 0\n", 2, "k");
  check_error("k = 2\n", 2, "n");
  check_error("n = 1\nn = 1\nk = 2\n", 2, "n");
  check_error("n = 1\nk = 2\ncolour = red\n", 3, "colour");
  check_error("n = 1\nk = 2\nrep = spin\n", 3, "rep");
  check_error("n = 1\nk = 2\nrep = cyclic:2\n", 3, "rep");
  check_error("n = 1\nk = 2\nrep = matrix:2\nrep.R.1 = 1,0 0,0\n", 4, "rep.R.1");
  check_error("n = 1\nk = 2\nrep = matrix:1\nrep.R.1 = 1\n", 4, "rep.R.1");
  check_error("n = 1\nk = 2\nrep.R.1 = 1,0\n", 3, "rep.R.1");
  check_error("n = 1\nk = 2\ntol.assert = -1\n", 3, "tol.assert");
  check_error("n = 1\nk = 2\nseed = -4\n", 3, "seed");
  check_error("n = 1\nk = 2\nM\n", 3, "");
  check_error("n = 1\nk = 2\nm = all\n", 3, "m");
}

TEST_CASE("cmd_cover: branch listing and congruence") {
  const auto r = cmd_cover(parse("n = 2\ntheta.2.1 = 1/5\nk = 2 3\nm = enumerate\n"));
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) == 7);
  CHECK(r.text().find("theta.2.1=1/30") != std::string::npos);
  CHECK(r.text().find("theta.2.1=1/5\n") != std::string::npos);

  const auto one = cmd_cover(parse("n = 1\nk = 4\n"));
  CHECK(one.ok());
  CHECK(one.checks.size() == 1);

  RunOptions tight;
  tight.enumerate_cap = 5;
  CHECK_THROWS_AS(cmd_cover(parse("n = 2\ntheta.2.1 = 1/5\nk = 2 3\nm = enumerate\n"), tight), std::length_error);
}

TEST_CASE("cmd_connection: rank profiles") {
  auto rank_line = [](const Report& r) {
    for (const auto& n : r.notes)
      if (n.starts_with("rank profile")) return n;
    return std::string();
  };
  CHECK(rank_line(cmd_connection(parse(kCommutative))) == "rank profile: (0,1)");
  CHECK(rank_line(cmd_connection(parse("n = 2\ntheta.2.1 = 1/5\nk = 2 3\n"))) == "rank profile: (1,0,0,0,0,0)");
  const auto reg = cmd_connection(parse("n = 2\ntheta.2.1 = 1/5\nk = 2 3\nrep = regular\n"));
  CHECK(rank_line(reg) == "rank profile: (1,1,1,1,1,1)");
  REQUIRE(find(reg, "projector.regular_rank_one") != nullptr);
  CHECK(find(reg, "projector.regular_rank_one")->status == Status::Pass);
  CHECK(reg.ok());

  // Broken relations are a failed check, not an exception.
  const auto bad = cmd_connection(parse("n = 1\nk = 3\nrep = sign\n"));
  CHECK_FALSE(bad.ok());
  CHECK(find(bad, "rep.relations")->status == Status::Fail);
  CHECK(find(bad, "connection.leibniz")->status == Status::Skip);
}

TEST_CASE("cmd_curvature: flat, negative control and determinism") {
  const auto m = parse(kNoncommutative);
  const auto r = cmd_curvature(m);
  CHECK(r.ok());
  CHECK(find(r, "curvature.flat")->residual <= 1e-10);

  RunOptions neg;
  neg.negative_control = true;
  const auto n = cmd_curvature(m, neg);
  CHECK(n.ok());
  const Check* control = find(n, "curvature.negative_control");
  REQUIRE(control != nullptr);
  CHECK(control->status == Status::ExpectedFail);
  CHECK(control->residual > 1e-3);

  CHECK(cmd_curvature(m).text() == r.text());
  // n = 1 has nothing to break.
  CHECK(find(cmd_curvature(parse(kCommutative), neg), "curvature.negative_control")->status == Status::Skip);
}

TEST_CASE("cmd_verify: example manifests") {
  const auto c = cmd_verify(parse(kCommutative));
  CHECK(c.ok());
  CHECK(c.count(Status::Skip) == 0);
  CHECK(find(c, "holonomy.classical")->status == Status::Pass);
  bool minus_one = false;
  for (const auto& note : c.notes) minus_one = minus_one || note.find("holonomy -1.000000000000,0.000000000000") != std::string::npos;
  CHECK(minus_one);

  const auto nc = cmd_verify(parse(kNoncommutative));
  CHECK(nc.ok());
  const Check* hol = find(nc, "holonomy.classical");
  REQUIRE(hol != nullptr);
  CHECK(hol->status == Status::Skip);
  CHECK(hol->detail == "Θ ≠ 0");
}

TEST_CASE("cmd_verify: byte-identical reports, seed-independent verdicts") {
  const auto m = parse(kNoncommutative);
  const auto first = cmd_verify(m);
  const auto second = cmd_verify(m);
  CHECK(first.text() == second.text());
  CHECK(first.json().dump() == second.json().dump());

  auto other = m;
  other.seed = 12345;
  const auto moved = cmd_verify(other);
  REQUIRE(moved.checks.size() == first.checks.size());
  for (std::size_t i = 0; i < first.checks.size(); ++i) {
    CHECK(moved.checks[i].name == first.checks[i].name);
    CHECK(moved.checks[i].status == first.checks[i].status);
  }
}

TEST_CASE("Report: statuses and JSON shape") {
  Report r;
  r.command = "x";
  r.expect_at_most("a", 1e-13, 1e-12, "p");
  r.expect_at_most("b", std::nan(""), 1e-12, "p");
  r.skip("c", "why", "p");
  r.expect_failure("d", 5.0, 1e-10, 1e-3, "p");
  r.expect_failure("e", 1e-6, 1e-10, 1e-3, "p");
  CHECK(r.checks[0].status == Status::Pass);
  CHECK(r.checks[1].status == Status::Fail);
  CHECK(r.checks[2].status == Status::Skip);
  CHECK(r.checks[3].status == Status::ExpectedFail);
  CHECK(r.checks[4].status == Status::Fail);
  const auto j = r.json();
  CHECK(j["summary"]["fail"] == 2);
  CHECK(j["summary"]["ok"] == false);
  CHECK(j["checks"][2]["detail"] == "why");
  CHECK_FALSE(j["checks"][2].contains("residual"));
}
