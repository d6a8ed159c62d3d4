#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhed {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  AsymmetricMatrix,
  NonPositiveOmega,
  SameSublatticeHopping,
  DisconnectedLattice,
  OddCycle,
  NonRealResult,
  EmptySector,
  SectorMismatch,
  DimensionTooLarge,
  NotHermitian,
  NoConvergence,
  PreconditionFailed,
  Unconverged,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hhed
