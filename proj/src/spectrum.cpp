#include "qhbound/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "qhbound/coulomb.hpp"
#include "qhbound/error.hpp"
#include "qhbound/parallel.hpp"

namespace qhbound {

namespace {

constexpr double kPi = std::numbers::pi;

// Scan resolution: largest change of any boundary phase between samples.
constexpr double kPhaseStep = kPi / 128.0;

// Closest approach of the scan to a K pole; steps shrink geometrically down to it.
constexpr double kPoleFloor = 1e-13;

double scan_step(const SpectrumProblem& p, double energy) {
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.channels.size(); ++i) {
    const double eps = p.kinetic(i, energy);
    if (p.model.kind() == ModelKind::coulomb) {
      const double nu = coulomb::effective_quantum_number(eps);
      step = std::min(step, kPhaseStep / (kPi * nu * nu * nu));
    } else {
      const double k = std::sqrt(2.0 * eps);
      step = std::min(step, kPhaseStep * k / p.model.wall_radius());
    }
  }
  for (const auto& pole : p.kmatrix.poles)
    step = std::min(step, std::max(std::abs(energy - pole.position), kPoleFloor) / 4.0);
  return step;
}

}  // namespace

void SpectrumProblem::validate() const {
  channels.validate();
  kmatrix.validate(channels.size());
  if (model.kind() == ModelKind::hard_wall)
    for (int l : channels.angular_momentum)
      if (l != 0) throw Error(Errc::ValidationError, "hard-wall model supports l = 0 only");
}

double BoundState::norm() const {
  double n = 0.0;
  for (std::size_t i = 0; i < waves.size(); ++i) n += X[static_cast<Eigen::Index>(i)] * X[static_cast<Eigen::Index>(i)] * waves[i].norm2;
  return n;
}

std::vector<double> SpectrumChunk::energies() const {
  std::vector<double> e;
  e.reserve(states.size());
  for (const auto& s : states) e.push_back(s.energy);
  return e;
}

Eigen::VectorXd channel_phases(const SpectrumProblem& problem, double energy) {
  const auto n = problem.channels.size();
  Eigen::VectorXd t(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    t[static_cast<Eigen::Index>(i)] =
        continuous_phase(problem.model, problem.channel(i), problem.kinetic(i, energy));
  return t;
}

Eigen::MatrixXd secular_matrix(const SpectrumProblem& problem, double energy) {
  const Eigen::VectorXd t = channel_phases(problem, energy);
  Eigen::MatrixXd m = t.array().cos().matrix().asDiagonal() * problem.kmatrix.eval(energy);
  m.diagonal() += t.array().sin().matrix();
  return m;
}

double secular_det(const SpectrumProblem& problem, double energy) {
  const Eigen::VectorXd t = channel_phases(problem, energy);
  const Eigen::VectorXd c = t.array().cos().matrix();
  const auto n = t.size();
  const auto np = static_cast<Eigen::Index>(problem.kmatrix.poles.size());
  // [[cos T K_smooth + sin T, cos T Gamma], [Gamma^T, -diag(E_p - E)]]: the Schur
  // complement of the lower block is the full secular matrix, and the lower
  // block's determinant is (-1)^P prod (E_p - E).
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + np, n + np);
  b.topLeftCorner(n, n) = c.asDiagonal() * problem.kmatrix.smooth(energy);
  b.topLeftCorner(n, n).diagonal() += t.array().sin().matrix();
  for (Eigen::Index p = 0; p < np; ++p) {
    const auto& pole = problem.kmatrix.poles[static_cast<std::size_t>(p)];
    b.block(0, n + p, n, 1) = c.cwiseProduct(pole.gamma);
    b.block(n + p, 0, 1, n) = pole.gamma.transpose();
    b(n + p, n + p) = -(pole.position - energy);
  }
  const double det = b.partialPivLu().determinant();
  return np % 2 == 0 ? det : -det;
}

void check_window(const SpectrumProblem& problem, double e_lo, double e_hi) {
  if (!(e_lo < e_hi)) throw Error(Errc::ValidationError, "window needs E_lo < E_hi");
  const auto& th = problem.channels.thresholds;
  std::ostringstream msg;
  if (problem.model.kind() == ModelKind::coulomb) {
    if (!(e_hi < th.front())) {
      msg << "window top " << e_hi << " is not below the lowest threshold " << th.front();
      throw Error(Errc::WindowOpenChannel, msg.str());
    }
    const double nu = coulomb::effective_quantum_number(e_lo - th.back());
    if (nu < LongRangeModel::kMinCoulombNu) {
      msg << "window bottom gives nu = " << nu << " < " << LongRangeModel::kMinCoulombNu << " in the highest channel";
      throw Error(Errc::InvalidArgument, msg.str());
    }
  } else if (!(e_lo >= th.back())) {
    msg << "window bottom " << e_lo << " is below the highest threshold " << th.back();
    throw Error(Errc::WindowOpenChannel, msg.str());
  }
}

RootScan scan_roots(const SpectrumProblem& problem, double e_lo, double e_hi, std::size_t max_states,
                    unsigned threads) {
  check_window(problem, e_lo, e_hi);
  // a hard-wall window may start exactly at threshold, where k = 0
  double start = e_lo;
  if (problem.model.kind() == ModelKind::hard_wall && e_lo == problem.channels.thresholds.back())
    start = e_lo + std::max(1e-14, 1e-12 * std::abs(e_lo));

  std::vector<double> grid{start};
  while (grid.back() < e_hi) grid.push_back(std::min(e_hi, grid.back() + scan_step(problem, grid.back())));

  std::vector<double> det(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { det[i] = secular_det(problem, grid[i]); }, threads);

  RootScan scan;
  struct Bracket {
    double a, b, fa, fb;
  };
  std::vector<Bracket> brackets;
  std::vector<double> exact;
  std::optional<std::size_t> last;  // last node with a nonzero value
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (det[i] == 0.0) {
      exact.push_back(grid[i]);
      last.reset();
      continue;
    }
    if (last && (det[*last] < 0.0) != (det[i] < 0.0)) brackets.push_back({grid[*last], grid[i], det[*last], det[i]});
    last = i;
  }
  const std::size_t count = brackets.size() + exact.size();
  if (count > max_states) {
    std::ostringstream msg;
    msg << count << " roots in the window exceed max_states = " << max_states;
    throw Error(Errc::TooManyStates, msg.str());
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t j) {
    const auto& br = brackets[j];
    auto f = [&](double e) { return secular_det(problem, e); };
    auto tol = [](double a, double b) {
      return std::abs(b - a) <= std::max(1e-13 * std::max(std::abs(a), std::abs(b)), 1e-300);
    };
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, br.a, br.b, br.fa, br.fb, tol, iters);
    roots[j] = 0.5 * (r.first + r.second);
  }, threads);
  roots.insert(roots.end(), exact.begin(), exact.end());
  std::sort(roots.begin(), roots.end());

  for (double e : roots) {
    if (!scan.energies.empty() && e - scan.energies.back() <= 1e-12) {
      std::ostringstream msg;
      msg << "roots at " << scan.energies.back() << " and " << e << " are within 1e-12; both skipped";
      scan.warnings.push_back(msg.str());
      scan.energies.pop_back();
      continue;
    }
    scan.energies.push_back(e);
  }
  return scan;
}

Eigen::VectorXd null_vector(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "null_vector needs a square matrix");
  const auto n = m.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  if (n > 1 && sv[n - 2] < tol) {
    std::ostringstream msg;
    msg << "two singular values below " << tol << " (" << sv[n - 2] << ", " << sv[n - 1] << ")";
    throw Error(Errc::DegenerateNullSpace, msg.str());
  }
  Eigen::VectorXd z = svd.matrixV().col(n - 1);
  Eigen::Index big = 0;
  z.cwiseAbs().maxCoeff(&big);
  if (z[big] < 0.0) z = -z;
  return z / z.norm();
}

Eigen::VectorXd amplitudes(const Eigen::VectorXd& Z, const Eigen::VectorXd& theta, const Eigen::VectorXd& KZ) {
  Eigen::VectorXd x(Z.size());
  for (Eigen::Index i = 0; i < Z.size(); ++i) {
    const double c = std::cos(theta[i]);
    const double s = std::sin(theta[i]);
    const double from_z = Z[i] / c;
    const double from_kz = -KZ[i] / s;
    x[i] = std::abs(c) >= std::abs(s) ? from_z : from_kz;
    if (std::abs(c) > 0.1 && std::abs(s) > 0.1) {
      const double scale = std::max({std::abs(from_z), std::abs(from_kz), 1e-2});
      if (std::abs(from_z - from_kz) > 1e-6 * scale) {
        std::ostringstream msg;
        msg << "channel " << i + 1 << ": Z/cos = " << from_z << " but -(KZ)/sin = " << from_kz;
        throw Error(Errc::InconsistentAmplitude, msg.str());
      }
    }
  }
  return x;
}

BoundState normalize_state(BoundState state) {
  const double n = state.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::ZeroNorm, "bound state has zero norm");
  state.X /= std::sqrt(n);
  return state;
}

BoundState solve_state(const SpectrumProblem& problem, double energy, bool keep_samples) {
  const Eigen::MatrixXd k = problem.kmatrix.eval(energy);
  const Eigen::VectorXd tc = channel_phases(problem, energy);
  Eigen::MatrixXd m = tc.array().cos().matrix().asDiagonal() * k;
  m.diagonal() += tc.array().sin().matrix();

  BoundState st;
  st.energy = energy;
  const double tol = 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff());
  st.Z = null_vector(m, tol);
  st.residual = (m * st.Z).norm();
  if (!(st.residual < tol)) {
    std::ostringstream msg;
    msg << "secular residual " << st.residual << " at E = " << energy;
    throw Error(Errc::NumericalBlowup, msg.str());
  }
  const auto n = problem.channels.size();
  st.theta.resize(static_cast<Eigen::Index>(n));
  st.waves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.waves.push_back(channel_wave(problem.model, problem.channel(i), problem.kinetic(i, energy), keep_samples));
    st.theta[static_cast<Eigen::Index>(i)] = st.waves.back().theta;
  }
  st.X = amplitudes(st.Z, st.theta, k * st.Z);
  return normalize_state(std::move(st));
}

SpectrumChunk solve_chunk(std::shared_ptr<const SpectrumProblem> problem, double e_lo, double e_hi,
                          const SolveOptions& options) {
  problem->validate();
  auto scan = scan_roots(*problem, e_lo, e_hi, options.max_states, options.threads);

  std::vector<std::optional<BoundState>> solved(scan.energies.size());
  std::vector<std::string> skipped(scan.energies.size());
  parallel_for(scan.energies.size(), [&](std::size_t j) {
    try {
      solved[j] = solve_state(*problem, scan.energies[j], options.keep_samples);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateNullSpace) throw;
      skipped[j] = e.what();
    }
  }, options.threads);

  SpectrumChunk chunk;
  chunk.problem = std::move(problem);
  chunk.e_lo = e_lo;
  chunk.e_hi = e_hi;
  chunk.warnings = std::move(scan.warnings);
  for (std::size_t j = 0; j < solved.size(); ++j) {
    if (solved[j]) {
      chunk.states.push_back(std::move(*solved[j]));
    } else {
      std::ostringstream msg;
      msg.precision(17);
      msg << "state at E = " << scan.energies[j] << " skipped: " << skipped[j];
      chunk.warnings.push_back(msg.str());
    }
  }
  return chunk;
}

}  // namespace qhbound
