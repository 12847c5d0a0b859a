#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhbound {

enum class Errc {
  // configuration
  ParseError,
  ValidationError,
  // physics / contract violations
  InvalidArgument,
  OpenChannel,
  WindowOpenChannel,
  ChannelMismatch,
  DegenerateEnergies,
  GridMismatch,
  AtPole,
  TooManyStates,
  AmplitudeAtCutoff,
  IrregularAtOrigin,
  EmptyMatrix,
  IllConditionedBasis,
  // numerical failures
  NonUniformGrid,
  Overflow,
  NumericalBlowup,
  BoundaryMismatch,
  DegenerateNullSpace,
  InconsistentAmplitude,
  ZeroNorm,
  NotPositiveDefinite,
};

std::string_view errc_name(Errc code) noexcept;

/// Process exit code for an error: 1 configuration, 2 physics/validation,
/// 3 numerical.
int exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qhbound
