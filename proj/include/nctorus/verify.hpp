#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nctorus/manifest.hpp"

namespace nct {

enum class Status { Pass, Fail, Skip, ExpectedFail };

std::string status_name(Status s);

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::Pass;
  std::string provenance;  // the property the check certifies
  std::string detail;      // skip reason or extra context
};

struct Report {
  std::string command;
  std::string manifest;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
  std::vector<Check> checks;

  // Pass iff residual ≤ tolerance (NaN fails).
  Check& expect_at_most(std::string name, double residual, double tolerance, std::string provenance);
  void skip(std::string name, std::string reason, std::string provenance);
  // A check that must fail by more than `margin`; FAIL when it does not.
  Check& expect_failure(std::string name, double residual, double tolerance, double margin, std::string provenance);
  void note(std::string line) { notes.push_back(std::move(line)); }

  int count(Status s) const;
  // No FAIL records; EXPECTED-FAIL and SKIP do not count against.
  bool ok() const { return count(Status::Fail) == 0; }

  std::string text() const;
  nlohmann::ordered_json json() const;
};

struct RunOptions {
  bool negative_control = false;
  std::size_t enumerate_cap = kDefaultEnumerateCap;
  int samples = 10;  // random ξ / element samples per randomized check
};

Report cmd_cover(const Manifest& m, const RunOptions& opt = {});
Report cmd_connection(const Manifest& m, const RunOptions& opt = {});
Report cmd_curvature(const Manifest& m, const RunOptions& opt = {});
Report cmd_verify(const Manifest& m, const RunOptions& opt = {});

// Building blocks shared with the acceptance driver. Residuals are max-norm
// differences divided by max(1, ‖reference‖).
double relative_residual(double diff, double scale);

struct CurvatureSample {
  double max_curvature = 0.0;
  double max_leibniz = 0.0;
  bool truncated = false;
};
// `samples` invariant ξ of degree cap/2 and base elements of degree base_cap/2.
CurvatureSample sample_connection(const std::shared_ptr<const CoveringSpec>& spec, const GroupRep& rep, int base_cap, int samples,
                                  Rng& rng);

// Curvature of the rank-one matrix idempotent over Ã on one generic ξ (needs n ≥ 2).
double negative_control_curvature(const std::shared_ptr<const CoveringSpec>& spec, int base_cap, Rng& rng);

}  // namespace nct
