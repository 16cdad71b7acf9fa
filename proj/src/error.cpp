#include "lorlab/error.hpp"

namespace lorlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NotCausal: return "NotCausal";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::ShootingFailed: return "ShootingFailed";
    case ErrorKind::NotAChain: return "NotAChain";
    case ErrorKind::RegionOutsideDomain: return "RegionOutsideDomain";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotChronological: return "NotChronological";
    case ErrorKind::PremiseViolated: return "PremiseViolated";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::UnknownProfile: return "UnknownProfile";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace lorlab
