#pragma once

#include <stdexcept>
#include <string>

namespace saep {

// All recoverable failures in the library surface as this exception.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace saep
