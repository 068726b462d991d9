#pragma once

#include <stdexcept>

namespace hecke {

// Violation of an exact-arithmetic invariant (integrality, divisibility,
// parity). Signals an implementation bug, never bad user input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hecke
