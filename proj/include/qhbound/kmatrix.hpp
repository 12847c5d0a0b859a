#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qhbound {

/// Rank-one resonance term gamma gamma^T / (position - E).
struct KPole {
  Eigen::VectorXd gamma;
  double position = 0.0;
};

/// Energy-dependent reaction matrix
/// K(E) = base + linear (E - e_ref) + sum_p gamma_p gamma_p^T / (E_p - E).
struct KMatrixSpec {
  Eigen::MatrixXd base;
  Eigen::MatrixXd linear;
  std::vector<KPole> poles;
  double e_ref = 0.0;

  /// Zero matrix of the given size with no energy dependence.
  static KMatrixSpec zero(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(base.rows()); }
  /// Throws ValidationError for non-square or non-symmetric parts and for
  /// size mismatches against `channels`.
  void validate(std::size_t channels) const;
  /// Throws AtPole within 1e-12 hartree of a pole position.
  Eigen::MatrixXd eval(double energy) const;
  /// Smooth part base + linear (E - e_ref).
  Eigen::MatrixXd smooth(double energy) const;
};

}  // namespace qhbound
