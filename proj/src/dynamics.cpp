#include "qhbound/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qhbound/error.hpp"
#include "qhbound/parallel.hpp"

namespace qhbound {

namespace {

using cplx = std::complex<double>;

Eigen::VectorXcd phases(std::span<const double> energies, double t) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(energies.size()));
  for (std::size_t k = 0; k < energies.size(); ++k) d[static_cast<Eigen::Index>(k)] = std::polar(1.0, -energies[k] * t);
  return d;
}

void require_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(Errc::InvalidArgument, std::string("dimension mismatch: ") + what);
}

}  // namespace

double WavepacketSpec::resolved_center() const {
  return center > 0.0 ? center : kepler_scales(mean_n).turning_point;
}

void WavepacketSpec::validate(double r0) const {
  if (!(width > 0.0)) throw Error(Errc::ValidationError, "wavepacket width sigma must be > 0");
  if (center <= 0.0 && !(mean_n > 0.0))
    throw Error(Errc::ValidationError, "wavepacket needs a center r_c or a mean_n");
  if (!(resolved_center() > r0)) throw Error(Errc::ValidationError, "wavepacket center must lie beyond r0");
}

KeplerScales kepler_scales(double mean_n) {
  if (!(mean_n > 0.0)) throw Error(Errc::InvalidArgument, "kepler scales need n > 0");
  return {2.0 * mean_n * mean_n, 2.0 * std::numbers::pi * mean_n * mean_n * mean_n};
}

std::vector<double> uniform_times(double span, std::size_t samples) {
  if (samples < 2 || !(span > 0.0)) throw Error(Errc::InvalidArgument, "time grid needs >= 2 samples and span > 0");
  std::vector<double> t(samples);
  for (std::size_t k = 0; k < samples; ++k) t[k] = span * static_cast<double>(k) / static_cast<double>(samples - 1);
  return t;
}

std::vector<double> gaussian_samples(const WavepacketSpec& spec, const LongRangeModel& model) {
  spec.validate(model.r0());
  const auto& grid = model.grid();
  const double rc = spec.resolved_center();
  const double s2 = 2.0 * spec.width * spec.width;
  std::vector<double> z(grid.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = model.r0_node(); i < grid.size(); ++i) {
    const double d = grid[i] - rc;
    z[i] = std::exp(-d * d / s2);
    peak = std::max(peak, z[i]);
  }
  if (!(peak > 0.0)) throw Error(Errc::ValidationError, "wavepacket lies outside the radial grid");
  if (z[model.r0_node()] > 1e-8 * peak) {
    std::ostringstream msg;
    msg << "wavepacket amplitude at r0 is " << z[model.r0_node()] / peak << " of its peak";
    throw Error(Errc::AmplitudeAtCutoff, msg.str());
  }
  std::vector<double> sq(z.size() - model.r0_node());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = z[model.r0_node() + i] * z[model.r0_node() + i];
  const double norm = std::sqrt(grid.integrate(sq, model.r0_node()));
  for (double& v : z) v /= norm;
  return z;
}

Eigen::VectorXd projections(std::span<const double> zeta, std::size_t channel, const SpectrumChunk& chunk,
                            unsigned threads) {
  const auto& problem = *chunk.problem;
  const auto& grid = problem.model.grid();
  require_dims(zeta.size(), grid.size(), "wavepacket samples vs grid");
  if (channel >= problem.channels.size()) throw Error(Errc::ValidationError, "wavepacket channel out of range");
  Eigen::VectorXd p(static_cast<Eigen::Index>(chunk.size()));
  parallel_for(chunk.size(), [&](std::size_t k) {
    const auto& st = chunk.states[k];
    const ChannelWave* wave = &st.waves[channel];
    ChannelWave fresh;
    if (!wave->has_samples()) {
      fresh = channel_wave(problem.model, problem.channel(channel), problem.kinetic(channel, st.energy));
      wave = &fresh;
    }
    std::vector<double> prod(wave->values.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = wave->values[i] * zeta[wave->first_node + i];
    p[static_cast<Eigen::Index>(k)] = st.X[static_cast<Eigen::Index>(channel)] * grid.integrate(prod, wave->first_node);
  }, threads);
  return p;
}

Eigen::VectorXd gaussian_projections(const WavepacketSpec& spec, const SpectrumChunk& chunk, unsigned threads) {
  const auto zeta = gaussian_samples(spec, chunk.problem->model);
  return projections(zeta, spec.channel, chunk, threads);
}

StateCoefficients coefficients(const Eigen::VectorXd& p, const MetricFactorization& fact, std::vector<double> energies) {
  require_dims(static_cast<std::size_t>(p.size()), fact.dim(), "projections vs metric");
  StateCoefficients c;
  c.energies = std::move(energies);
  c.p = p;
  c.b = fact.inverse * p;
  const double in_span = p.dot(c.b);
  c.span_residual = 1.0 - in_span;
  if (!(in_span > 0.0)) throw Error(Errc::ZeroNorm, "wavepacket has no component in the spanned space");
  c.b /= std::sqrt(c.b.dot(fact.metric * c.b));
  return c;
}

std::vector<cplx> naive_autocorrelation(const Eigen::VectorXd& p, std::span<const double> energies,
                                        std::span<const double> times) {
  require_dims(static_cast<std::size_t>(p.size()), energies.size(), "projections vs energies");
  std::vector<cplx> c(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k)
      sum += std::polar(1.0, -energies[k] * times[j]) * (p[static_cast<Eigen::Index>(k)] * p[static_cast<Eigen::Index>(k)]);
    c[j] = sum;
  }
  return c;
}

std::vector<cplx> correct_autocorrelation(const StateCoefficients& c, const MetricFactorization& fact,
                                          std::span<const double> times) {
  require_dims(c.energies.size(), fact.dim(), "energies vs metric");
  const Eigen::VectorXd v = fact.sqrt * c.b;
  const Eigen::VectorXd v2 = v.cwiseProduct(v);
  std::vector<cplx> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < c.energies.size(); ++k)
      sum += std::polar(1.0, -c.energies[k] * times[j]) * v2[static_cast<Eigen::Index>(k)];
    out[j] = sum;
  }
  return out;
}

std::vector<double> naive_norm_series(const Eigen::VectorXd& p, std::span<const double> energies,
                                      const Eigen::MatrixXd& g, std::span<const double> times, unsigned threads) {
  require_dims(static_cast<std::size_t>(p.size()), energies.size(), "projections vs energies");
  require_dims(static_cast<std::size_t>(g.rows()), energies.size(), "metric vs energies");
  const Eigen::MatrixXcd gc = g.cast<cplx>();
  std::vector<double> out(times.size());
  parallel_for(times.size(), [&](std::size_t j) {
    const Eigen::VectorXcd a = phases(energies, times[j]).cwiseProduct(p.cast<cplx>());
    out[j] = a.dot(gc * a).real();
  }, threads);
  return out;
}

std::vector<double> correct_norm_series(const StateCoefficients& c, const MetricFactorization& fact,
                                        std::span<const double> times, unsigned threads) {
  require_dims(c.energies.size(), fact.dim(), "energies vs metric");
  const Eigen::VectorXcd v = (fact.sqrt * c.b).cast<cplx>();
  const Eigen::MatrixXcd inv_sqrt = fact.inv_sqrt.cast<cplx>();
  const Eigen::MatrixXcd gc = fact.metric.cast<cplx>();
  std::vector<double> out(times.size());
  parallel_for(times.size(), [&](std::size_t j) {
    const Eigen::VectorXcd bt = inv_sqrt * phases(c.energies, times[j]).cwiseProduct(v);
    out[j] = bt.dot(gc * bt).real();
  }, threads);
  return out;
}

AutocorrelationSeries evolve(const StateCoefficients& c, const MetricFactorization& fact, std::vector<double> times,
                             double period, unsigned threads) {
  AutocorrelationSeries s;
  s.period = period;
  s.times = std::move(times);
  s.times_kepler.reserve(s.times.size());
  for (double t : s.times) s.times_kepler.push_back(t / period);
  s.c_naive = naive_autocorrelation(c.p, c.energies, s.times);
  s.c_correct = correct_autocorrelation(c, fact, s.times);
  s.norm_naive = naive_norm_series(c.p, c.energies, fact.metric, s.times, threads);
  s.norm_correct = correct_norm_series(c, fact, s.times, threads);
  return s;
}

}  // namespace qhbound
