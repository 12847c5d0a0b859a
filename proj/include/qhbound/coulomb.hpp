#pragma once

namespace qhbound::coulomb {

struct ValueDeriv {
  double value = 0.0;
  double deriv = 0.0;
};

/// Effective quantum number nu = (-2 eps)^(-1/2) for a closed channel.
double effective_quantum_number(double eps);

/// Leading coefficient c of the energy-analytic regular solution
/// f ~ c r^(l+1) near the origin, normalised for unit Wronskian with the
/// Milne-phase irregular partner: c = sqrt(2 pi) 2^l / (2l+1)! * sqrt(A),
/// A = prod_{p=1..l} (1 + 2 p^2 eps).
double regular_lead(int l, double eps);

/// Frobenius series of the regular solution and its r-derivative. Accurate
/// for r up to a few bohr; used to start outward integration.
ValueDeriv regular_series(double r, double eps, int l);

/// Non-oscillating solution w of the Milne equation w'' + k^2 w = w^-3,
/// k^2 = 2 eps + 2/r - l(l+1)/r^2, at a point inside the classically allowed
/// region. Obtained by iterating w <- (k^2 + w''/w)^(-1/4) on truncated Taylor
/// series about r, so every derivative is exact to the truncation order.
ValueDeriv milne_amplitude(double r, double eps, int l, int iterations = 8);

/// Coefficient q(x) of v'' + q v = 0 after the change of variables r = x^2,
/// u = sqrt(x) v applied to -u''/2 + (l(l+1)/2r^2 - 1/r) u = eps u.
double sqrt_mesh_q(double x, double eps, int l);

}  // namespace qhbound::coulomb
