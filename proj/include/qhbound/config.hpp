#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "qhbound/dynamics.hpp"
#include "qhbound/spectrum.hpp"

namespace qhbound {

struct TimeGridSpec {
  double periods = 10.0;
  std::size_t samples = 2048;
  /// Explicit span in atomic time units; overrides `periods` when > 0.
  double t_max = 0.0;
};

/// Parsed and validated run configuration.
struct RunConfig {
  std::string source;  // file name used in diagnostics
  std::shared_ptr<const SpectrumProblem> problem;
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::size_t max_states = 2000;
  std::optional<WavepacketSpec> wavepacket;
  TimeGridSpec times;
  /// 0: default (matrix dimension).
  std::size_t kappa_n = 0;
  /// Canonical JSON of the effective configuration; the config hash is taken over it.
  std::string canonical;

  /// FNV-1a 64 of `canonical`, 16 hex digits.
  std::string hash() const;
  /// Mean effective quantum number of the wavepacket, for Kepler time units.
  double mean_n() const;
  void set_max_states(std::size_t n);
  void set_kappa_n(std::size_t n);
};

/// Throws ParseError (with line and column) for malformed JSON and
/// ValidationError naming the violated rule otherwise.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");

}  // namespace qhbound
