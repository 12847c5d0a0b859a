#include "qhbound/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhbound/error.hpp"
#include "qhbound/parallel.hpp"

namespace qhbound {

namespace {

std::vector<double> upper_magnitudes(const MetricMatrix& g) {
  const auto n = g.entries.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(std::abs(g.entries(i, j)));
  std::stable_sort(out.begin(), out.end(), [](double a, double b) { return a > b; });
  return out;
}

}  // namespace

MetricMatrix build_metric(const SpectrumChunk& chunk, unsigned threads) {
  const auto n = static_cast<Eigen::Index>(chunk.size());
  MetricMatrix g;
  g.energies = chunk.energies();
  g.entries = Eigen::MatrixXd::Identity(n, n);
  parallel_for(chunk.size(), [&](std::size_t a) {
    const auto& sa = chunk.states[a];
    for (std::size_t b = a + 1; b < chunk.size(); ++b) {
      const auto& sb = chunk.states[b];
      double sum = 0.0;
      for (std::size_t i = 0; i < sa.waves.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        sum += sa.X[k] * sb.X[k] * wronskian_overlap(sa.waves[i], sb.waves[i]);
      }
      g.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
      g.entries(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = sum;
    }
  }, threads);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      if (!(std::abs(g.entries(a, b)) < 1.0)) {
        std::ostringstream msg;
        msg << "|G(" << a << "," << b << ")| = " << std::abs(g.entries(a, b)) << " >= 1";
        throw Error(Errc::IllConditionedBasis, msg.str());
      }
  return g;
}

MetricMatrix make_metric(Eigen::MatrixXd entries, std::vector<double> energies) {
  if (entries.rows() != entries.cols()) throw Error(Errc::InvalidArgument, "metric must be square");
  if (!energies.empty() && energies.size() != static_cast<std::size_t>(entries.rows()))
    throw Error(Errc::InvalidArgument, "one energy per metric row required");
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(Errc::InvalidArgument, "metric must be symmetric");
  return {std::move(energies), std::move(entries)};
}

MetricFactorization factorize(const MetricMatrix& g) {
  if (g.dim() == 0) throw Error(Errc::EmptyMatrix, "cannot factorize an empty metric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.entries);
  if (eig.info() != Eigen::Success) throw Error(Errc::NumericalBlowup, "metric eigendecomposition failed");
  MetricFactorization f;
  f.eigenvalues = eig.eigenvalues();
  f.eigenvectors = eig.eigenvectors();
  f.metric = g.entries;
  const double lo = f.eigenvalues[0];
  if (!(lo > 1e-12)) {
    std::ostringstream msg;
    msg << "smallest metric eigenvalue " << lo << " <= 1e-12";
    throw Error(Errc::NotPositiveDefinite, msg.str());
  }
  const auto& v = f.eigenvectors;
  const Eigen::ArrayXd lam = f.eigenvalues.array();
  f.inverse = v * lam.inverse().matrix().asDiagonal() * v.transpose();
  f.sqrt = v * lam.sqrt().matrix().asDiagonal() * v.transpose();
  f.inv_sqrt = v * lam.rsqrt().matrix().asDiagonal() * v.transpose();
  f.condition = f.eigenvalues[f.eigenvalues.size() - 1] / lo;
  return f;
}

double kappa_index(const MetricMatrix& g, std::size_t n) {
  const auto mags = upper_magnitudes(g);
  if (mags.empty()) throw Error(Errc::EmptyMatrix, "metric has no off-diagonal pairs");
  if (n == 0) n = std::min(g.dim(), mags.size());
  if (n > mags.size()) {
    std::ostringstream msg;
    msg << "kappa N = " << n << " exceeds the " << mags.size() << " off-diagonal pairs";
    throw Error(Errc::InvalidArgument, msg.str());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += mags[i];
  return sum / static_cast<double>(n);
}

Eigen::MatrixXd biorthogonal_coefficients(const MetricFactorization& f) { return f.inverse; }

std::vector<double> sorted_offdiagonals(const MetricMatrix& g, std::size_t count) {
  auto mags = upper_magnitudes(g);
  if (count > mags.size()) {
    std::ostringstream msg;
    msg << "requested " << count << " off-diagonals, only " << mags.size() << " pairs";
    throw Error(Errc::InvalidArgument, msg.str());
  }
  mags.resize(count);
  return mags;
}

}  // namespace qhbound
