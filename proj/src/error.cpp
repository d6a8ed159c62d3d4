#include "hhed/error.hpp"

namespace hhed {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
    case ErrorCode::SameSublatticeHopping: return "SameSublatticeHopping";
    case ErrorCode::DisconnectedLattice: return "DisconnectedLattice";
    case ErrorCode::OddCycle: return "OddCycle";
    case ErrorCode::NonRealResult: return "NonRealResult";
    case ErrorCode::EmptySector: return "EmptySector";
    case ErrorCode::SectorMismatch: return "SectorMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Unconverged: return "Unconverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hhed
