#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coderet {

/// Distinguishes caller mistakes (bad config, missing paths) from failures
/// that happen while doing the work. The CLI maps these onto exit codes 2 and 1.
enum class ErrorKind { usage, runtime };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_usage(const std::string& message);
[[noreturn]] void throw_runtime(const std::string& message);

/// Collects non-fatal warnings raised while processing an input.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const noexcept { return warnings.empty(); }
};

}  // namespace coderet
