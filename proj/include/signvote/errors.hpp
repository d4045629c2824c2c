#pragma once

#include <stdexcept>
#include <string>

namespace signvote {

// Malformed arguments: wrong dimensions, non-finite values, empty inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters outside the region where a bound or a run is defined
// (p <= 1/2, alpha at or past the tolerable threshold, b >= q).
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An attack asked for knowledge it was not given.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace signvote
