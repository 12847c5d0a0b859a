#pragma once

#include <string>
#include <vector>

namespace qhbound {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Coulomb, one channel, K = 0, n = 50..60: 11 roots at -1/(2n^2) to 1e-9
/// relative, in under 10 s.
CheckResult check_hydrogen_spectrum();

/// Hard wall L = 10, r0 = 1, K = 0: roots m^2 pi^2/200 to 1e-10 and the
/// Wronskian G_12 equal to quadrature to 1e-8.
CheckResult check_hard_wall_oracle();

/// >= 30 channel/energy pairs over both models: |Wronskian - quadrature| < 1e-8.
CheckResult check_overlap_sweep();

/// Coulomb r0 = 0: kappa < 1e-8 and max_t ||C_naive| - |C_correct|| < 1e-6.
CheckResult check_hermitian_limit();

/// Two-state metric g = 0.1: C_naive(0) = 1.1, |C_correct| = |cos(dE t/2)|,
/// naive norm in [0.99, 1.21], each to 1e-12.
CheckResult check_two_state_toy();

/// The hard-wall and hydrogen checks above, in order.
std::vector<CheckResult> selftest_suite();

}  // namespace qhbound
