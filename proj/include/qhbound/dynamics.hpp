#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qhbound/metric.hpp"
#include "qhbound/spectrum.hpp"

namespace qhbound {

/// Radial Gaussian exp(-(r - center)^2 / (2 width^2)) in one channel,
/// normalised on the model grid.
struct WavepacketSpec {
  double center = 0.0;
  double width = 0.0;
  std::size_t channel = 0;  // 0-based
  /// Mean effective quantum number; sets center = 2 n^2 when center is 0.
  double mean_n = 0.0;

  double resolved_center() const;
  /// Throws ValidationError for width <= 0 or center <= r0.
  void validate(double r0) const;
};

struct StateCoefficients {
  std::vector<double> energies;
  Eigen::VectorXd p;
  Eigen::VectorXd b;
  /// 1 - p^T G^-1 p before b is renormalised.
  double span_residual = 0.0;
};

struct KeplerScales {
  double turning_point = 0.0;
  double period = 0.0;
};

/// Outer turning point 2 n^2 and classical period 2 pi n^3 of a Coulomb orbit.
KeplerScales kepler_scales(double mean_n);

/// `samples` uniform times on [0, span], endpoints included.
std::vector<double> uniform_times(double span, std::size_t samples);

/// Gaussian samples on the model grid, unit quadrature norm over [r0, r_max].
/// Throws AmplitudeAtCutoff if the value at r0 exceeds 1e-8 of the peak.
std::vector<double> gaussian_samples(const WavepacketSpec& spec, const LongRangeModel& model);

/// p(E) = X_c(E) int F_c zeta dr for zeta sampled on the full model grid.
Eigen::VectorXd projections(std::span<const double> zeta, std::size_t channel, const SpectrumChunk& chunk,
                            unsigned threads = 0);

Eigen::VectorXd gaussian_projections(const WavepacketSpec& spec, const SpectrumChunk& chunk, unsigned threads = 0);

/// b = G^-1 p rescaled to b^T G b = 1.
StateCoefficients coefficients(const Eigen::VectorXd& p, const MetricFactorization& fact,
                               std::vector<double> energies = {});

/// sum_E exp(-i E t) p(E)^2, no metric correction.
std::vector<std::complex<double>> naive_autocorrelation(const Eigen::VectorXd& p, std::span<const double> energies,
                                                        std::span<const double> times);

/// v^T diag(exp(-i E t)) v with v = G^1/2 b.
std::vector<std::complex<double>> correct_autocorrelation(const StateCoefficients& c, const MetricFactorization& fact,
                                                          std::span<const double> times);

/// a(t)^+ G a(t) with a(t) = diag(exp(-i E t)) p.
std::vector<double> naive_norm_series(const Eigen::VectorXd& p, std::span<const double> energies,
                                      const Eigen::MatrixXd& g, std::span<const double> times, unsigned threads = 0);

/// b(t)^+ G b(t) with b(t) = G^-1/2 diag(exp(-i E t)) G^1/2 b.
std::vector<double> correct_norm_series(const StateCoefficients& c, const MetricFactorization& fact,
                                        std::span<const double> times, unsigned threads = 0);

struct AutocorrelationSeries {
  std::vector<double> times;
  /// times / period
  std::vector<double> times_kepler;
  double period = 1.0;
  std::vector<std::complex<double>> c_naive;
  std::vector<std::complex<double>> c_correct;
  std::vector<double> norm_naive;
  std::vector<double> norm_correct;
};

/// All four series on one time grid.
AutocorrelationSeries evolve(const StateCoefficients& c, const MetricFactorization& fact,
                             std::vector<double> times, double period, unsigned threads = 0);

}  // namespace qhbound
