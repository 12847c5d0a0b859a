#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qhbound/dynamics.hpp"
#include "qhbound/error.hpp"

using namespace qhbound;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kG = 0.1;
constexpr double kE1 = -1.0e-4;
constexpr double kE2 = -0.6e-4;

struct Toy {
  MetricFactorization fact;
  std::vector<double> energies{kE1, kE2};
  Eigen::VectorXd b0;
  Eigen::VectorXd p;
};

Toy toy() {
  Eigen::MatrixXd g(2, 2);
  g << 1.0, kG, kG, 1.0;
  Toy t{factorize(make_metric(g)), {kE1, kE2}, Eigen::VectorXd::Constant(2, 1.0 / std::sqrt(2.0 * (1.0 + kG))), {}};
  t.p = g * t.b0;
  return t;
}

std::shared_ptr<SpectrumProblem> hydrogen_problem(double r0, double nu_max) {
  ChannelSet ch{{0.0}, {0}};
  return std::make_shared<SpectrumProblem>(
      SpectrumProblem{ch, LongRangeModel::coulomb(r0, coulomb_r_max_for(nu_max), 0.004), KMatrixSpec::zero(1)});
}

double hydrogen(double n) { return -0.5 / (n * n); }

}  // namespace

TEST_CASE("kepler scales") {
  CHECK(kepler_scales(1.0).turning_point == 2.0);
  CHECK(kepler_scales(1.0).period == doctest::Approx(2.0 * kPi));
  CHECK(kepler_scales(55.0).turning_point == 6050.0);
  CHECK(kepler_scales(55.0).period == doctest::Approx(1045364.9554820036).epsilon(1e-15));
  CHECK(kepler_scales(110.0).period / kepler_scales(55.0).period == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(kepler_scales(0.0), Error);
}

TEST_CASE("two-state toy: coefficients round trip") {
  const auto t = toy();
  const auto c = coefficients(t.p, t.fact, t.energies);
  CHECK((c.b - t.b0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(c.span_residual) < 1e-12);
  CHECK(c.b.dot(t.fact.metric * c.b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-state toy: closed-form series") {
  const auto t = toy();
  const auto c = coefficients(t.p, t.fact, t.energies);
  const double de = kE2 - kE1;
  const auto times = uniform_times(4.0 * kPi / de, 257);
  const auto naive = naive_autocorrelation(t.p, t.energies, times);
  const auto correct = correct_autocorrelation(c, t.fact, times);
  const auto nn = naive_norm_series(t.p, t.energies, t.fact.metric, times);
  const auto nc = correct_norm_series(c, t.fact, times);
  CHECK(std::abs(naive[0] - 1.1) < 1e-12);
  double lo = 1e9, hi = -1e9;
  for (std::size_t j = 0; j < times.size(); ++j) {
    CHECK(std::abs(std::abs(correct[j]) - std::abs(std::cos(de * times[j] / 2.0))) < 1e-12);
    CHECK(std::abs(nn[j] - (1.0 + kG) * (1.0 + kG * std::cos(de * times[j]))) < 1e-12);
    CHECK(std::abs(nc[j] - 1.0) < 1e-12);
    lo = std::min(lo, nn[j]);
    hi = std::max(hi, nn[j]);
  }
  CHECK(std::abs(std::abs(correct[0]) - 1.0) < 1e-12);
  CHECK(std::abs(lo - 0.99) < 1e-12);
  CHECK(std::abs(hi - 1.21) < 1e-12);
  const std::vector<double> half{kPi / de};
  CHECK(std::abs(correct_norm_series(c, t.fact, half)[0] - 1.0) < 1e-12);
}

TEST_CASE("identity metric: naive and correct coincide") {
  const auto f = factorize(make_metric(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::VectorXd p(3);
  p << 0.6, 0.0, 0.8;
  const std::vector<double> e{-3e-4, -2e-4, -1e-4};
  const auto c = coefficients(p, f, e);
  CHECK((c.b - p).cwiseAbs().maxCoeff() < 1e-15);
  const auto times = uniform_times(1e5, 64);
  const auto a = naive_autocorrelation(p, e, times);
  const auto b = correct_autocorrelation(c, f, times);
  const auto n = naive_norm_series(p, e, f.metric, times);
  for (std::size_t j = 0; j < times.size(); ++j) {
    CHECK(std::abs(a[j] - b[j]) < 1e-12);
    CHECK(n[j] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two routes to the correct autocorrelation agree; time reversal") {
  const auto t = toy();
  const auto c = coefficients(t.p, t.fact, t.energies);
  const auto times = uniform_times(3e5, 33);
  const auto direct = correct_autocorrelation(c, t.fact, times);
  std::vector<double> back(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) back[j] = -times[j];
  const auto reversed = correct_autocorrelation(c, t.fact, back);
  const auto naive = naive_autocorrelation(t.p, t.energies, times);
  const auto naive_rev = naive_autocorrelation(t.p, t.energies, back);
  const Eigen::MatrixXcd sq = t.fact.sqrt.cast<std::complex<double>>();
  const Eigen::MatrixXcd isq = t.fact.inv_sqrt.cast<std::complex<double>>();
  const Eigen::MatrixXcd g = t.fact.metric.cast<std::complex<double>>();
  const Eigen::VectorXcd b = c.b.cast<std::complex<double>>();
  for (std::size_t j = 0; j < times.size(); ++j) {
    Eigen::VectorXcd d(2);
    d << std::polar(1.0, -kE1 * times[j]), std::polar(1.0, -kE2 * times[j]);
    const Eigen::MatrixXcd u = isq * d.asDiagonal() * sq;
    const std::complex<double> route = b.dot(g * (u * b));
    CHECK(std::abs(route - direct[j]) < 1e-12);
    CHECK(std::abs(reversed[j] - std::conj(direct[j])) < 1e-12);
    CHECK(std::abs(naive_rev[j] - std::conj(naive[j])) < 1e-12);
  }
}

TEST_CASE("eigenwave packet projects on a single state") {
  ChannelSet ch{{0.0}, {0}};
  auto p = std::make_shared<SpectrumProblem>(
      SpectrumProblem{ch, LongRangeModel::hard_wall(0.0, 10.0, 0.005), KMatrixSpec::zero(1)});
  const auto chunk = solve_chunk(p, 0.0, 5.0);
  REQUIRE(chunk.size() == 10);
  const auto& grid = p->model.grid();
  std::vector<double> zeta(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) zeta[i] = std::sqrt(0.2) * std::sin(5.0 * kPi * grid[i] / 10.0);
  const auto proj = projections(zeta, 0, chunk);
  for (Eigen::Index m = 0; m < 10; ++m) CHECK(std::abs(std::abs(proj[m]) - (m == 4 ? 1.0 : 0.0)) < 1e-8);
}

TEST_CASE("narrow packet samples the channel wave") {
  const auto p = hydrogen_problem(0.0, 60.5);
  SolveOptions opt;
  opt.keep_samples = true;
  const auto chunk = solve_chunk(p, hydrogen(49.5), hydrogen(60.5), opt);
  const auto& grid = p->model.grid();
  const std::size_t node = grid.nearest(400.0);
  WavepacketSpec spec;
  spec.center = grid[node];
  spec.width = 1e-3 * spec.center;
  const auto zeta = gaussian_samples(spec, p->model);
  const double area = grid.integrate(zeta);
  const auto proj = projections(zeta, 0, chunk);
  double scale = 0.0;
  for (const auto& s : chunk.states) scale = std::max(scale, std::abs(s.X[0] * s.waves[0].values[node]));
  for (std::size_t k = 0; k < chunk.size(); ++k) {
    const auto& s = chunk.states[k];
    CHECK(std::abs(proj[static_cast<Eigen::Index>(k)] / area - s.X[0] * s.waves[0].values[node]) < 1e-3 * scale);
  }
}

TEST_CASE("packet at the n = 55 turning point is spanned by nearby levels") {
  const auto p = hydrogen_problem(0.0, 90.5);
  const auto chunk = solve_chunk(p, hydrogen(30.5), hydrogen(90.5));
  WavepacketSpec spec;
  spec.mean_n = 55.0;
  spec.width = 300.0;
  const auto proj = gaussian_projections(spec, chunk);
  const auto fact = factorize(build_metric(chunk));
  const auto c = coefficients(proj, fact, chunk.energies());
  CHECK(proj.squaredNorm() > 0.9);
  CHECK(proj.squaredNorm() < 1.1);
  CHECK(c.span_residual < 0.05);
  CHECK(c.span_residual > -1e-10);
}

TEST_CASE("wavepacket validation") {
  const auto model = LongRangeModel::hard_wall(1.0, 10.0, 0.01);
  WavepacketSpec spec;
  spec.center = 5.0;
  spec.width = 0.0;
  try {
    gaussian_samples(spec, model);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationError);
  }
  spec.center = 2.0;
  spec.width = 1.0;
  try {
    gaussian_samples(spec, model);
    FAIL("expected AmplitudeAtCutoff");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AmplitudeAtCutoff);
  }
  spec.center = 5.5;
  spec.width = 0.5;
  const auto z = gaussian_samples(spec, model);
  std::vector<double> sq(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) sq[i] = z[i] * z[i];
  CHECK(model.grid().integrate(sq) == doctest::Approx(1.0).epsilon(1e-12));
}
