#include "qhbound/kmatrix.hpp"

#include <cmath>
#include <sstream>

#include "qhbound/error.hpp"

namespace qhbound {

namespace {

bool symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

}  // namespace

KMatrixSpec KMatrixSpec::zero(std::size_t n) {
  KMatrixSpec k;
  k.base = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  k.linear = k.base;
  return k;
}

void KMatrixSpec::validate(std::size_t channels) const {
  const auto n = static_cast<Eigen::Index>(channels);
  if (base.rows() != n || base.cols() != n)
    throw Error(Errc::ValidationError, "K base matrix must be N_ch x N_ch");
  if (linear.rows() != n || linear.cols() != n)
    throw Error(Errc::ValidationError, "K linear matrix must be N_ch x N_ch");
  if (!symmetric(base)) throw Error(Errc::ValidationError, "K base matrix must be symmetric");
  if (!symmetric(linear)) throw Error(Errc::ValidationError, "K linear matrix must be symmetric");
  if (!base.allFinite() || !linear.allFinite()) throw Error(Errc::ValidationError, "K matrix entries must be finite");
  for (const auto& p : poles) {
    if (p.gamma.size() != n) throw Error(Errc::ValidationError, "pole strength vector must have N_ch entries");
    if (!p.gamma.allFinite() || !std::isfinite(p.position))
      throw Error(Errc::ValidationError, "pole parameters must be finite");
  }
}

Eigen::MatrixXd KMatrixSpec::smooth(double energy) const { return base + linear * (energy - e_ref); }

Eigen::MatrixXd KMatrixSpec::eval(double energy) const {
  Eigen::MatrixXd k = smooth(energy);
  for (const auto& p : poles) {
    const double d = p.position - energy;
    if (std::abs(d) <= 1e-12) {
      std::ostringstream msg;
      msg << "K evaluated at " << energy << ", within 1e-12 of the pole at " << p.position;
      throw Error(Errc::AtPole, msg.str());
    }
    k.noalias() += (p.gamma * p.gamma.transpose()) / d;
  }
  return k;
}

}  // namespace qhbound
