#pragma once

#include <stdexcept>
#include <string>

namespace phf {

// Raised when an internal consistency check fails. The CLI maps this to exit
// status 2; everything else that escapes is a usage or input error.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::logic_error("invariant violation: " + what) {}
};

inline void ensure(bool condition, const char* what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace phf
