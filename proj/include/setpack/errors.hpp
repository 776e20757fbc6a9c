#pragma once

#include <stdexcept>
#include <string>

namespace setpack {

/// Malformed input: bad file syntax, invariant violations, failed preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap or operation budget was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace setpack
