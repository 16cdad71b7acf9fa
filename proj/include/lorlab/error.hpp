#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorlab {

enum class ErrorKind {
  DomainExceeded,
  InvalidProfile,
  StepTooLarge,
  NotCausal,
  NotReducible,
  ShootingFailed,
  NotAChain,
  RegionOutsideDomain,
  TooLarge,
  NotChronological,
  PremiseViolated,
  PreconditionViolated,
  UnknownProfile,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every contract violation in the library is reported through this type.
/// The message names the violated contract; kind() is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lorlab
