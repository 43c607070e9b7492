#pragma once

#include <stdexcept>
#include <string>

namespace tortured {

// Fatal configuration or input error. Messages carry file:line when known.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tortured
