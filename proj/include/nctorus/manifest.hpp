#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/covering.hpp"
#include "nctorus/group_rep.hpp"
#include "nctorus/rational.hpp"

namespace nct {

// Line-oriented `key = value` run description. Axis indices are 1-based in the file
// and 0-based everywhere else.
//
//   n = 2
//   theta.2.1 = 1/5          # θ_rs for r > s, default 0
//   k = 2 3
//   m.2.1 = 0                # or `m = enumerate` (default all 0)
//   rep = random:2           # trivial[:N] | sign | cyclic:j | regular | random:N | matrix:N
//   rep.R.1 = 1,0 0,0; 0,0 -1,0   # rows separated by ';', entries "re,im"
//   M = 8
//   tol.drop = 1e-15
//   tol.assert = 1e-10
//   seed = 1
class ManifestError : public std::runtime_error {
 public:
  ManifestError(std::string source, int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct RepSpec {
  enum class Kind { Trivial, Sign, Cyclic, Regular, Random, Matrix };
  Kind kind = Kind::Trivial;
  int fiber_dim = 1;  // Trivial / Random / Matrix
  int axis = 0;       // Cyclic
  std::vector<Eigen::MatrixXcd> matrices;

  std::string str() const;
};

struct Manifest {
  std::string source = "<manifest>";
  int n = 0;
  std::vector<Rational> theta_lower;
  Mode fold;
  bool enumerate = false;
  std::vector<std::int64_t> offsets;
  RepSpec rep;
  int cap = 8;
  double drop_tol = 1e-15;
  double assert_tol = 1e-10;
  std::uint64_t seed = 1;

  std::shared_ptr<const ThetaMatrix> theta() const;
  // Throws ContractViolation when `m = enumerate`.
  CoveringSpec covering() const;
  // Random presets draw from their own stream seeded by `seed`.
  GroupRep representation(const CoveringSpec& spec) const;
};

Manifest parse_manifest(std::istream& in, const std::string& source = "<manifest>");
Manifest load_manifest(const std::string& path);

}  // namespace nct
