#pragma once

#include <stdexcept>
#include <string>

namespace sbv {

struct SignatureMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParityError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};
struct UnknownGenerator : std::out_of_range {
  using std::out_of_range::out_of_range;
};
// Violated operation precondition (non-holomorphic input, non-invertible map, ...).
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace sbv
