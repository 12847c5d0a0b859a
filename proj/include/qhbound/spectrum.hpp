#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qhbound/kmatrix.hpp"
#include "qhbound/radial.hpp"

namespace qhbound {

/// Channels, long-range model and reaction matrix: everything the secular
/// equation depends on.
struct SpectrumProblem {
  ChannelSet channels;
  LongRangeModel model;
  KMatrixSpec kmatrix;

  /// Channel validity, K shape, hard-wall l = 0.
  void validate() const;
  Channel channel(std::size_t i) const { return {i, channels.angular_momentum[i]}; }
  double kinetic(std::size_t i, double energy) const { return energy - channels.thresholds[i]; }
};

struct BoundState {
  double energy = 0.0;
  /// Unit null vector of the secular matrix.
  Eigen::VectorXd Z;
  /// Amplitudes of the channel waves, normalised so sum X_i^2 norm_i = 1.
  Eigen::VectorXd X;
  /// Reduced boundary phase per channel (the phase the waves were built with).
  Eigen::VectorXd theta;
  std::vector<ChannelWave> waves;
  /// ||(cos T K + sin T) Z|| with unit Z.
  double residual = 0.0;

  /// sum_i X_i^2 norm2_i
  double norm() const;
};

struct SpectrumChunk {
  std::shared_ptr<const SpectrumProblem> problem;
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::vector<BoundState> states;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return states.size(); }
  std::vector<double> energies() const;
};

struct SolveOptions {
  std::size_t max_states = 2000;
  /// Keep radial samples of every channel wave (memory ~ states x channels x grid).
  bool keep_samples = false;
  unsigned threads = 0;
};

/// Continuous boundary phases theta_i(E).
Eigen::VectorXd channel_phases(const SpectrumProblem& problem, double energy);

/// cos(T) K(E) + sin(T), T = diag(theta_i(E)).
Eigen::MatrixXd secular_matrix(const SpectrumProblem& problem, double energy);

/// det(cos T K + sin T) with the K poles divided out, evaluated through a
/// bordered matrix so it stays finite and continuous across pole positions.
/// Same zeros as det(K + R) away from cos(theta_i) = 0.
double secular_det(const SpectrumProblem& problem, double energy);

/// Throws WindowOpenChannel unless every channel is closed on [e_lo, e_hi].
void check_window(const SpectrumProblem& problem, double e_lo, double e_hi);

struct RootScan {
  std::vector<double> energies;
  std::vector<std::string> warnings;
};

/// Roots of secular_det in [e_lo, e_hi], polished to |dE/E| < 1e-12.
/// Throws TooManyStates when more than max_states sign changes are found.
RootScan scan_roots(const SpectrumProblem& problem, double e_lo, double e_hi, std::size_t max_states,
                    unsigned threads = 0);

/// Unit vector along the smallest right singular vector, largest component
/// positive. Throws DegenerateNullSpace if two singular values fall below tol.
Eigen::VectorXd null_vector(const Eigen::MatrixXd& m, double tol);

/// X_i = Z_i / cos(theta_i) or -(KZ)_i / sin(theta_i), whichever denominator
/// is larger. Throws InconsistentAmplitude if the two disagree by more than
/// 1e-6 relative where both denominators exceed 0.1.
Eigen::VectorXd amplitudes(const Eigen::VectorXd& Z, const Eigen::VectorXd& theta, const Eigen::VectorXd& KZ);

/// Rescales X so that sum X_i^2 norm_i = 1. Throws ZeroNorm.
BoundState normalize_state(BoundState state);

/// Builds one normalised bound state at a root energy.
BoundState solve_state(const SpectrumProblem& problem, double energy, bool keep_samples);

/// Full pipeline: scan, null vectors, amplitudes, waves, normalisation.
SpectrumChunk solve_chunk(std::shared_ptr<const SpectrumProblem> problem, double e_lo, double e_hi,
                          const SolveOptions& options = {});

}  // namespace qhbound
