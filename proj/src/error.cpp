#include "qhbound/error.hpp"

namespace qhbound {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OpenChannel: return "OpenChannel";
    case Errc::WindowOpenChannel: return "WindowOpenChannel";
    case Errc::ChannelMismatch: return "ChannelMismatch";
    case Errc::DegenerateEnergies: return "DegenerateEnergies";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::AtPole: return "AtPole";
    case Errc::TooManyStates: return "TooManyStates";
    case Errc::AmplitudeAtCutoff: return "AmplitudeAtCutoff";
    case Errc::IrregularAtOrigin: return "IrregularAtOrigin";
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::IllConditionedBasis: return "IllConditionedBasis";
    case Errc::NonUniformGrid: return "NonUniformGrid";
    case Errc::Overflow: return "Overflow";
    case Errc::NumericalBlowup: return "NumericalBlowup";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::DegenerateNullSpace: return "DegenerateNullSpace";
    case Errc::InconsistentAmplitude: return "InconsistentAmplitude";
    case Errc::ZeroNorm: return "ZeroNorm";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
  }
  return "Unknown";
}

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::ParseError:
    case Errc::ValidationError:
      return 1;
    case Errc::NonUniformGrid:
    case Errc::Overflow:
    case Errc::NumericalBlowup:
    case Errc::BoundaryMismatch:
    case Errc::DegenerateNullSpace:
    case Errc::InconsistentAmplitude:
    case Errc::ZeroNorm:
    case Errc::NotPositiveDefinite:
      return 3;
    default:
      return 2;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace qhbound
