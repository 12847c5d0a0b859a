#include "qhbound/coulomb.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qhbound/error.hpp"

namespace qhbound::coulomb {

namespace {

// Truncated Taylor series about a point; coefficient k multiplies t^k.
using Jet = std::vector<double>;

Jet mul(const Jet& a, const Jet& b) {
  Jet c(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
  return c;
}

Jet div(const Jet& a, const Jet& b) {
  Jet c(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double s = a[k];
    for (std::size_t j = 0; j < k; ++j) s -= c[j] * b[k - j];
    c[k] = s / b[0];
  }
  return c;
}

Jet power(const Jet& a, double p) {
  Jet c(a.size(), 0.0);
  c[0] = std::pow(a[0], p);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * c[k - j];
    c[k] = s / (static_cast<double>(k) * a[0]);
  }
  return c;
}

Jet second_derivative(const Jet& a) {
  Jet c(a.size(), 0.0);
  for (std::size_t k = 0; k + 2 < a.size(); ++k)
    c[k] = static_cast<double>((k + 2) * (k + 1)) * a[k + 2];
  return c;
}

}  // namespace

double effective_quantum_number(double eps) { return 1.0 / std::sqrt(-2.0 * eps); }

double regular_lead(int l, double eps) {
  double a = 1.0;
  for (int p = 1; p <= l; ++p) a *= 1.0 + 2.0 * p * p * eps;
  double fact = 1.0;
  for (int k = 2; k <= 2 * l + 1; ++k) fact *= k;
  return std::sqrt(2.0 * std::numbers::pi) * std::ldexp(1.0, l) / fact * std::sqrt(a);
}

ValueDeriv regular_series(double r, double eps, int l) {
  // u = sum_k a_k r^(l+1+k);  a_k [(l+1+k)(l+k) - l(l+1)] = -2 a_{k-1} - 2 eps a_{k-2}
  double a_prev2 = 0.0;
  double a_prev = regular_lead(l, eps);
  double rk = std::pow(r, l + 1);
  ValueDeriv out{a_prev * rk, a_prev * (l + 1) * rk / r};
  for (int k = 1; k < 500; ++k) {
    const double d = static_cast<double>((l + 1 + k) * (l + k) - l * (l + 1));
    const double ak = (-2.0 * a_prev - 2.0 * eps * a_prev2) / d;
    rk *= r;
    const double term = ak * rk;
    out.value += term;
    out.deriv += term * (l + 1 + k) / r;
    if (k > 4 && std::abs(term) < 1e-18 * std::abs(out.value)) break;
    a_prev2 = a_prev;
    a_prev = ak;
  }
  return out;
}

ValueDeriv milne_amplitude(double r, double eps, int l, int iterations) {
  const std::size_t order = 2 * static_cast<std::size_t>(iterations) + 4;
  Jet inv(order);
  for (std::size_t k = 0; k < order; ++k) inv[k] = ((k % 2) ? -1.0 : 1.0) / std::pow(r, k + 1);
  Jet k2 = mul(inv, inv);
  for (std::size_t k = 0; k < order; ++k) k2[k] = 2.0 * inv[k] - l * (l + 1) * k2[k];
  k2[0] += 2.0 * eps;
  if (!(k2[0] > 0.0))
    throw Error(Errc::NumericalBlowup, "Milne amplitude requested outside the allowed region");

  Jet w = power(k2, -0.25);
  for (int it = 0; it < iterations; ++it) {
    Jet base = div(second_derivative(w), w);
    for (std::size_t k = 0; k < order; ++k) base[k] += k2[k];
    if (!(base[0] > 0.0)) throw Error(Errc::NumericalBlowup, "Milne iteration left the allowed region");
    w = power(base, -0.25);
  }
  if (!(w[0] > 1e-12 && w[0] < 1e12))
    throw Error(Errc::NumericalBlowup, "Milne amplitude outside [1e-12, 1e12]");
  return {w[0], w[1]};
}

double sqrt_mesh_q(double x, double eps, int l) {
  const double x2 = x * x;
  return 8.0 * eps * x2 + 8.0 - (4.0 * l * (l + 1) + 0.75) / x2;
}

}  // namespace qhbound::coulomb
