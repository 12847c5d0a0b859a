#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qhbound/spectrum.hpp"

namespace qhbound {

/// Gram matrix of the normalised eigenstates, ordered by energy.
struct MetricMatrix {
  std::vector<double> energies;
  Eigen::MatrixXd entries;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Spectral decomposition of G and the matrix functions built from it.
struct MetricFactorization {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;
  Eigen::MatrixXd metric;
  Eigen::MatrixXd inverse;
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
  double condition = 1.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(metric.rows()); }
};

/// G_ab = sum_i X_i(a) X_i(b) <F_i(a)|F_i(b)> from boundary Wronskians; unit
/// diagonal. Throws IllConditionedBasis if an off-diagonal reaches 1 in
/// magnitude.
MetricMatrix build_metric(const SpectrumChunk& chunk, unsigned threads = 0);

/// Wraps an explicit symmetric matrix (toy models, tests).
MetricMatrix make_metric(Eigen::MatrixXd entries, std::vector<double> energies = {});

/// Throws NotPositiveDefinite if the smallest eigenvalue is <= 1e-12.
MetricFactorization factorize(const MetricMatrix& g);

/// Mean of the n largest |G_ab|, a < b; n = 0 means min(dim, pair count).
/// Ties keep row-major pair order. Throws EmptyMatrix without off-diagonal pairs.
double kappa_index(const MetricMatrix& g, std::size_t n = 0);

/// G^-1; column b holds the coefficients of the biorthogonal partner of state b.
Eigen::MatrixXd biorthogonal_coefficients(const MetricFactorization& f);

/// The `count` largest off-diagonal magnitudes, descending.
std::vector<double> sorted_offdiagonals(const MetricMatrix& g, std::size_t count);

}  // namespace qhbound
