#pragma once

#include <stdexcept>
#include <string>

namespace nct {

// A caller broke an operation's precondition (dimension mismatch, foreign
// algebra, element outside the required submodule, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A product or embedding left the degree window and the caller asked for strict
// (verification) mode.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nct
