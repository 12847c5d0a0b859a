#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qhbound/error.hpp"
#include "qhbound/spectrum.hpp"

using namespace qhbound;

namespace {

constexpr double kPi = std::numbers::pi;

double hydrogen(double n) { return -0.5 / (n * n); }

std::shared_ptr<SpectrumProblem> coulomb_problem(std::vector<double> thresholds, KMatrixSpec k, double r0 = 2.0,
                                                 double r_max = 40000.0) {
  ChannelSet ch{thresholds, std::vector<int>(thresholds.size(), 0)};
  return std::make_shared<SpectrumProblem>(
      SpectrumProblem{ch, LongRangeModel::coulomb(r0, r_max, 0.004), std::move(k)});
}

std::shared_ptr<SpectrumProblem> wall_problem(double r0, double L, KMatrixSpec k) {
  ChannelSet ch{{0.0}, {0}};
  return std::make_shared<SpectrumProblem>(SpectrumProblem{ch, LongRangeModel::hard_wall(r0, L, 0.005), std::move(k)});
}

// Two coupled Coulomb channels with a pole, used by several cases.
KMatrixSpec coupled_k() {
  KMatrixSpec k = KMatrixSpec::zero(2);
  k.base << 0.3, 0.2, 0.2, -0.1;
  k.linear << 50.0, 0.0, 0.0, 0.0;
  k.e_ref = -2e-4;
  Eigen::VectorXd g(2);
  g << 0.01, 0.004;
  k.poles.push_back({g, -1.8e-4});
  return k;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("kmatrix evaluation") {
  const auto z = KMatrixSpec::zero(3);
  CHECK(z.eval(-0.3).isZero(0.0));
  KMatrixSpec k = KMatrixSpec::zero(3);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
  g[0] = 1.0;
  k.poles.push_back({g, -0.001});
  const auto m = k.eval(-0.002);
  CHECK(m(0, 0) == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(m.cwiseAbs().sum() == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(code_of([&] { k.eval(-0.001 + 1e-13); }) == Errc::AtPole);
}

TEST_CASE("kmatrix validation") {
  KMatrixSpec k = KMatrixSpec::zero(2);
  k.base(0, 1) = 0.1;
  CHECK(code_of([&] { k.validate(2); }) == Errc::ValidationError);
  k.base(1, 0) = 0.1;
  k.validate(2);
  CHECK(code_of([&] { k.validate(3); }) == Errc::ValidationError);
}

TEST_CASE("secular determinant reduces to sin theta products for K = 0") {
  const auto one = coulomb_problem({0.0}, KMatrixSpec::zero(1));
  for (double nu : {50.2, 53.7, 59.99}) {
    const double e = hydrogen(nu);
    CHECK(secular_det(*one, e) == doctest::Approx(std::sin(-kPi * nu)).epsilon(1e-12));
  }
  const auto two = coulomb_problem({0.0, 3e-5}, KMatrixSpec::zero(2));
  const double e = hydrogen(52.3);
  const double nu2 = 1.0 / std::sqrt(-2.0 * (e - 3e-5));
  CHECK(secular_det(*two, e) == doctest::Approx(std::sin(-kPi * 52.3) * std::sin(-kPi * nu2)).epsilon(1e-10));
}

TEST_CASE("secular determinant is continuous across theta = pi/2 and across K poles") {
  const auto p = coulomb_problem({0.0, 3e-5}, coupled_k());
  // theta_1 = pi/2 at nu = 52.5; pole at -1.8e-4
  for (double centre : {hydrogen(52.5), -1.8e-4}) {
    double prev = secular_det(*p, centre - 1e-9);
    for (int i = -99; i <= 100; ++i) {
      const double d = secular_det(*p, centre + i * 1e-11);
      CHECK(std::abs(d - prev) < 1e-3);
      prev = d;
    }
  }
}

TEST_CASE("hydrogen spectrum n = 50..60") {
  const auto p = coulomb_problem({0.0}, KMatrixSpec::zero(1));
  const auto scan = scan_roots(*p, hydrogen(49.5), hydrogen(60.5), 100);
  REQUIRE(scan.energies.size() == 11);
  for (int n = 50; n <= 60; ++n) {
    const double e = hydrogen(n);
    CHECK(std::abs(scan.energies[n - 50] - e) < 1e-9 * std::abs(e));
  }
}

TEST_CASE("hard-wall spectrum") {
  const auto p = wall_problem(0.0, 10.0, KMatrixSpec::zero(1));
  // m^2 pi^2 / 200 <= 5 for m = 1..10
  const auto scan = scan_roots(*p, 0.0, 5.0, 100);
  REQUIRE(scan.energies.size() == 10);
  for (int m = 1; m <= 10; ++m) CHECK(std::abs(scan.energies[m - 1] - m * m * kPi * kPi / 200.0) < 1e-10);
}

TEST_CASE("hard-wall root completeness over random windows") {
  const auto p = wall_problem(1.0, 10.0, KMatrixSpec::zero(1));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> top(0.01, 8.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double e_hi = top(rng);
    const auto scan = scan_roots(*p, 0.0, e_hi, 1000);
    CAPTURE(e_hi);
    CHECK(scan.energies.size() == static_cast<std::size_t>(std::floor(10.0 * std::sqrt(2.0 * e_hi) / kPi)));
  }
}

TEST_CASE("window and state-count guards") {
  const auto p = coulomb_problem({0.0, 1e-5}, KMatrixSpec::zero(2));
  CHECK(code_of([&] { scan_roots(*p, -1e-3, 1e-6, 100); }) == Errc::WindowOpenChannel);
  CHECK(code_of([&] { scan_roots(*p, hydrogen(40), hydrogen(60), 5); }) == Errc::TooManyStates);
  const auto w = wall_problem(0.0, 10.0, KMatrixSpec::zero(1));
  CHECK(code_of([&] { scan_roots(*w, -0.1, 0.5, 100); }) == Errc::WindowOpenChannel);
}

TEST_CASE("null vectors") {
  CHECK(null_vector(Eigen::MatrixXd::Zero(1, 1), 1e-10)[0] == 1.0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(1, 1) = 5.0;
  const auto z = null_vector(d, 1e-10);
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(z[1] == doctest::Approx(0.0));
  CHECK(code_of([] { null_vector(Eigen::MatrixXd::Zero(2, 2), 1e-10); }) == Errc::DegenerateNullSpace);
}

TEST_CASE("amplitude branches") {
  Eigen::VectorXd z(1), t(1), kz(1);
  z << 1.0;
  t << 0.0;
  kz << 0.0;
  CHECK(amplitudes(z, t, kz)[0] == 1.0);
  // theta = pi/2: only -(KZ)/sin is usable
  z << 0.0;
  t << kPi / 2;
  kz << -0.7;
  CHECK(amplitudes(z, t, kz)[0] == doctest::Approx(0.7).epsilon(1e-15));
  // inconsistent branches
  z << 1.0;
  t << 0.6;
  kz << 0.0;
  CHECK(code_of([&] { amplitudes(z, t, kz); }) == Errc::InconsistentAmplitude);
}

TEST_CASE("hydrogen chunk states are normalised") {
  const auto p = coulomb_problem({0.0}, KMatrixSpec::zero(1), 2.0, 16850.0);
  const auto chunk = solve_chunk(p, hydrogen(49.5), hydrogen(60.5));
  REQUIRE(chunk.size() == 11);
  for (const auto& s : chunk.states) {
    CHECK(s.X[0] * s.X[0] * s.waves[0].norm2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.residual < 1e-8);
  }
  const auto again = normalize_state(normalize_state(chunk.states[3]));
  CHECK(again.X[0] == doctest::Approx(chunk.states[3].X[0]).epsilon(1e-12));
}

TEST_CASE("hard-wall chunk waves are sines") {
  const auto p = wall_problem(0.0, 10.0, KMatrixSpec::zero(1));
  SolveOptions opt;
  opt.keep_samples = true;
  const auto chunk = solve_chunk(p, 0.0, 5.0, opt);
  REQUIRE(chunk.size() == 10);
  const auto& grid = p->model.grid();
  for (std::size_t m = 1; m <= 10; ++m) {
    const auto& s = chunk.states[m - 1];
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double psi = s.X[0] * s.waves[0].values[i];
      const double ref = std::sqrt(2.0 / 10.0) * std::sin(m * kPi * grid[i] / 10.0);
      worst = std::max(worst, std::min(std::abs(psi - ref), std::abs(psi + ref)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("coupled channels: residuals, branches and normalisation") {
  const auto p = coulomb_problem({0.0, 3e-5}, coupled_k());
  const auto chunk = solve_chunk(p, hydrogen(45.0), hydrogen(60.0));
  CHECK(chunk.warnings.empty());
  CHECK(chunk.size() > 20);
  for (std::size_t j = 0; j < chunk.size(); ++j) {
    const auto& s = chunk.states[j];
    CHECK(s.residual < 1e-8);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-10));
    if (j > 0) CHECK(s.energy - chunk.states[j - 1].energy > 1e-12);
    const Eigen::MatrixXd m = secular_matrix(*p, s.energy);
    CHECK((m * s.Z).norm() < 1e-8);
  }
}

TEST_CASE("small shift of K moves every root by O(delta)") {
  const auto p = coulomb_problem({0.0, 3e-5}, coupled_k());
  auto k = coupled_k();
  const double delta = 1e-6;
  k.base += delta * Eigen::MatrixXd::Identity(2, 2);
  const auto q = coulomb_problem({0.0, 3e-5}, k);
  const auto a = scan_roots(*p, hydrogen(45.0), hydrogen(60.0), 500);
  const auto b = scan_roots(*q, hydrogen(45.0), hydrogen(60.0), 500);
  REQUIRE(a.energies.size() == b.energies.size());
  for (std::size_t j = 0; j < a.energies.size(); ++j) {
    // level spacing ~ 1/nu^3; a unit shift of K moves a level by at most ~ that
    const double nu = 1.0 / std::sqrt(-2.0 * a.energies[j]);
    CHECK(std::abs(a.energies[j] - b.energies[j]) * nu * nu * nu < 10.0 * delta);
  }
}
