#include "coderet/errors.hpp"

namespace coderet {

void throw_usage(const std::string& message) {
  throw Error(ErrorKind::usage, message);
}

void throw_runtime(const std::string& message) {
  throw Error(ErrorKind::runtime, message);
}

}  // namespace coderet
