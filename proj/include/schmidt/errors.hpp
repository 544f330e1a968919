#pragma once

#include <stdexcept>

namespace schmidt {

// Raised when a computed quantity violates an internal consistency bound.
// Precondition violations throw std::invalid_argument instead.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schmidt
