#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace threshkit {

enum class ErrorKind {
  EmptyInput,
  TrivialFamily,
  ForeignElement,
  CapExceeded,
  InvalidProbability,
  GroundMismatch,
  FibreError,
  DuplicateInFibre,
  NotACover,
  ProbabilityOverflow,
  NotSymmetric,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that front ends
/// can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace threshkit
