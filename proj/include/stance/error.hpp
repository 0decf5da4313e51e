#pragma once

#include <stdexcept>
#include <string>

namespace stance {

// Thrown for malformed input files and violated preconditions that the
// caller cannot recover from. The message is a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stance
