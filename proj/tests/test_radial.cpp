#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qhbound/coulomb.hpp"
#include "qhbound/error.hpp"
#include "qhbound/numerov.hpp"
#include "qhbound/radial.hpp"

using namespace qhbound;

namespace {

constexpr double kPi = std::numbers::pi;

double hydrogen(double n) { return -0.5 / (n * n); }

ChannelWave unit(const ChannelWave& w) { return w.scaled(1.0 / std::sqrt(w.norm2)); }

}  // namespace

TEST_CASE("numerov reproduces the free sine") {
  const auto grid = RadialGrid::uniform(0.0, 20.0, 1e-3);
  const double k = 1.0;
  const auto sol = numerov_integrate([](double) { return 0.0; }, 0.5, grid, Direction::outward,
                                     {0.0, std::sin(k * grid[1])});
  CHECK_FALSE(sol.degenerate);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(sol.values[i] - std::sin(k * grid[i])));
  CHECK(worst < 1e-9);
}

TEST_CASE("numerov zero seed gives a flagged zero solution") {
  const auto grid = RadialGrid::uniform(0.0, 5.0, 0.01);
  const auto sol = numerov_integrate([](double) { return 0.0; }, 0.5, grid, Direction::outward, {0.0, 0.0});
  CHECK(sol.degenerate);
  for (double v : sol.values) CHECK(v == 0.0);
}

TEST_CASE("numerov rejects a non-uniform grid") {
  const auto grid = RadialGrid::sqrt_uniform(100.0, 0.05);
  try {
    numerov_integrate([](double) { return 0.0; }, 0.5, grid, Direction::outward, {0.0, 1.0});
    FAIL("expected NonUniformGrid");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonUniformGrid);
  }
}

TEST_CASE("numerov inward coulomb solution grows monotonically through the forbidden region") {
  const double eps = hydrogen(55.0);
  const auto grid = RadialGrid::uniform(1.0, 9000.0, 0.05);
  const auto v = [](double r) { return -1.0 / r; };
  const std::size_t n = grid.size() - 1;
  const double kappa = std::sqrt(-2.0 * eps - 2.0 / grid[n]);
  const auto sol = numerov_integrate(v, eps, grid, Direction::inward, {1e-20, 1e-20 * std::exp(kappa * 0.05)});
  for (std::size_t i = n; grid[i - 1] > 2.0 * 55.0 * 55.0; --i) {
    CHECK(sol.values[i] > 0.0);
    REQUIRE(sol.values[i - 1] > sol.values[i]);
  }
}

TEST_CASE("hard-wall pair has unit wronskian and closed form") {
  const auto model = LongRangeModel::hard_wall(0.0, 10.0, 0.01);
  const auto pair = milne_pair(model, {0, 0}, 0.5);
  CHECK(pair.max_wronskian_error() < 1e-14);
  for (double r : {1.0, 5.0, 9.0}) {
    const std::size_t i = model.grid().nearest(r);
    CHECK(pair.f[i] == doctest::Approx(std::sin(r)).epsilon(1e-14));
    CHECK(pair.g[i] == doctest::Approx(-std::cos(r)).epsilon(1e-14));
  }
}

TEST_CASE("hard-wall pair needs a positive energy") {
  const auto model = LongRangeModel::hard_wall(0.0, 10.0, 0.01);
  CHECK_THROWS_AS(milne_pair(model, {0, 0}, -0.1), Error);
}

TEST_CASE("coulomb pair has unit wronskian") {
  const auto model = LongRangeModel::coulomb(1.0, 16000.0, 0.004);
  for (int l : {0, 1, 3}) {
    CAPTURE(l);
    const auto pair = milne_pair(model, {0, l}, hydrogen(55.0));
    CHECK(pair.f.size() > 1000);
    CHECK(pair.max_wronskian_error() < 1e-8);
  }
  const auto pair = milne_pair(model, {0, 0}, hydrogen(23.4));
  CHECK(pair.max_wronskian_error() < 1e-8);
}

TEST_CASE("coulomb pair rejects open channels") {
  const auto model = LongRangeModel::coulomb(1.0, 16000.0, 0.004);
  try {
    milne_pair(model, {0, 0}, 0.0);
    FAIL("expected OpenChannel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OpenChannel);
  }
}

TEST_CASE("milne amplitude tends to the constant-k solution far out") {
  // for eps > 0 and large r the wavenumber is nearly constant
  const double eps = 0.5;
  const double r = 1e8;
  const auto w = coulomb::milne_amplitude(r, eps, 0);
  const double k = std::sqrt(2.0 * eps + 2.0 / r);
  CHECK(w.value == doctest::Approx(1.0 / std::sqrt(k)).epsilon(1e-12));
}

TEST_CASE("boundary phase") {
  const auto coul = LongRangeModel::coulomb(1.0, 16000.0, 0.004);
  for (int n : {10, 50, 55, 60})
    CHECK(std::abs(theta_phase(coul, {0, 0}, hydrogen(n))) < 1e-10);
  CHECK(std::abs(theta_phase(coul, {0, 0}, hydrogen(55.5))) == doctest::Approx(kPi / 2).epsilon(1e-10));
  const double nu = 55.0 * (1.0 + 1e-10);
  CHECK(std::abs(theta_phase(coul, {0, 0}, hydrogen(nu))) == doctest::Approx(kPi * 55.0 * 1e-10).epsilon(1e-3));

  const auto wall = LongRangeModel::hard_wall(0.0, 10.0, 0.01);
  CHECK(std::abs(theta_phase(wall, {0, 0}, kPi * kPi / 200.0)) < 1e-14);
  for (double eps : {0.01, 0.3, 2.0, 7.5}) {
    const double t = theta_phase(wall, {0, 0}, eps);
    CHECK(t > -kPi / 2);
    CHECK(t <= kPi / 2);
    CHECK(std::abs(std::sin(std::sqrt(2.0 * eps) * 10.0 + t)) < 1e-12);
  }
}

TEST_CASE("hard-wall channel wave vanishes at the wall") {
  const auto model = LongRangeModel::hard_wall(0.0, 10.0, 0.01);
  for (double eps : {kPi * kPi / 200.0, 0.3}) {
    const auto w = channel_wave(model, {0, 0}, eps);
    double peak = 0.0;
    for (double v : w.values) peak = std::max(peak, std::abs(v));
    CHECK(std::abs(w.values.back()) < 1e-10 * peak);
  }
  const auto w = channel_wave(model, {0, 0}, kPi * kPi / 200.0);
  const std::size_t i = model.grid().nearest(3.0);
  CHECK(w.values[i] / w.values[model.grid().nearest(5.0)] ==
        doctest::Approx(std::sin(0.3 * kPi)).epsilon(1e-12));
}

TEST_CASE("coulomb channel wave decays and matches the pair") {
  const auto model = LongRangeModel::coulomb(2.0, 9000.0, 0.004);
  const double eps = hydrogen(55.0 - 0.37);
  const auto w = channel_wave(model, {0, 0}, eps);
  double peak = 0.0;
  for (double v : w.values) peak = std::max(peak, std::abs(v));
  CHECK(std::abs(w.values.back()) < 1e-8 * peak);

  const auto pair = milne_pair(model, {0, 0}, eps);
  REQUIRE(pair.first_node == w.first_node);
  const double c = std::cos(w.theta), s = std::sin(w.theta);
  double worst = 0.0;
  for (std::size_t j = 0; j < pair.f.size(); ++j)
    worst = std::max(worst, std::abs(w.values[j] - (c * pair.f[j] - s * pair.g[j])));
  CHECK(worst < 1e-8 * peak);
  CHECK(w.F_r0 == doctest::Approx(c * pair.f_r0 - s * pair.g_r0).epsilon(1e-8));
  CHECK(w.Fprime_r0 == doctest::Approx(c * pair.f_deriv_r0 - s * pair.g_deriv_r0).epsilon(1e-8));
}

TEST_CASE("coulomb channel wave at a hydrogenic energy has the hydrogenic norm") {
  // regular at the origin with unit-wronskian scaling: int_0^inf f^2 = pi nu^3 / 2
  const auto model = LongRangeModel::coulomb(0.0, 16000.0, 0.004);
  for (int l : {0, 2}) {
    const auto w = channel_wave(model, {0, l}, hydrogen(55.0));
    CHECK(w.norm2 == doctest::Approx(kPi * std::pow(55.0, 3) / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("coulomb r0 = 0 needs a wave regular at the origin") {
  const auto model = LongRangeModel::coulomb(0.0, 16000.0, 0.004);
  try {
    channel_wave(model, {0, 0}, hydrogen(55.3));
    FAIL("expected IrregularAtOrigin");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IrregularAtOrigin);
  }
}

TEST_CASE("coulomb r_max too small is reported") {
  const auto model = LongRangeModel::coulomb(1.0, 7000.0, 0.004);
  try {
    channel_wave(model, {0, 0}, hydrogen(55.0));
    FAIL("expected BoundaryMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundaryMismatch);
  }
}

TEST_CASE("coulomb r0 between 0 and 0.25 is rejected") {
  CHECK_THROWS_AS(LongRangeModel::coulomb(0.1, 1000.0, 0.004), Error);
}

TEST_CASE("hard-wall overlap of the two lowest eigenwaves") {
  const auto model = LongRangeModel::hard_wall(1.0, 10.0, 0.005);
  const auto w1 = unit(channel_wave(model, {0, 0}, kPi * kPi / 200.0));
  const auto w2 = unit(channel_wave(model, {0, 0}, 4.0 * kPi * kPi / 200.0));
  const double wr = wronskian_overlap(w1, w2);
  const double qd = quadrature_overlap(w1, w2);
  CHECK(wr == doctest::Approx(-0.012719997627937811).epsilon(1e-12));
  CHECK(std::abs(wr - qd) < 1e-8);
  CHECK(wronskian_overlap(w2, w1) == wr);
}

TEST_CASE("wronskian overlap vanishes at a common node") {
  const auto model = LongRangeModel::hard_wall(0.0, 10.0, 0.01);
  const auto w1 = channel_wave(model, {0, 0}, kPi * kPi / 200.0);
  const auto w2 = channel_wave(model, {0, 0}, 9.0 * kPi * kPi / 200.0);
  CHECK(std::abs(wronskian_overlap(w1, w2)) < 1e-15);
}

TEST_CASE("overlap preconditions") {
  const auto model = LongRangeModel::hard_wall(1.0, 10.0, 0.01);
  const auto w1 = channel_wave(model, {0, 0}, 0.2);
  auto w2 = channel_wave(model, {0, 0}, 0.2);
  try {
    wronskian_overlap(w1, w2);
    FAIL("expected DegenerateEnergies");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateEnergies);
  }
  w2.channel.index = 1;
  try {
    wronskian_overlap(w1, w2);
    FAIL("expected ChannelMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ChannelMismatch);
  }
  const auto other = LongRangeModel::hard_wall(1.0, 10.0, 0.02);
  try {
    quadrature_overlap(w1, channel_wave(other, {0, 0}, 0.3));
    FAIL("expected GridMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GridMismatch);
  }
}

TEST_CASE("quadrature overlap signs and normalisation") {
  const auto model = LongRangeModel::hard_wall(1.0, 10.0, 0.005);
  const auto w = unit(channel_wave(model, {0, 0}, 0.7));
  CHECK(quadrature_overlap(w, w) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(channel_norm(w) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(channel_norm(unit(w)) == doctest::Approx(1.0).epsilon(1e-10));
  const auto neg = w.scaled(-1.0);
  CHECK(quadrature_overlap(w, neg) == doctest::Approx(-channel_norm(w)).epsilon(1e-14));
}

TEST_CASE("hard-wall raw norm matches the closed form") {
  const auto model = LongRangeModel::hard_wall(1.0, 10.0, 0.005);
  // F = sin(k r) / sqrt(k); closed form of int_1^10 sin^2(pi r / 10) dr
  const double k = kPi / 10.0;
  const auto w = channel_wave(model, {0, 0}, k * k / 2.0);
  CHECK(w.norm2 * k == doctest::Approx(4.96774464189432).epsilon(1e-10));
}

TEST_CASE("coulomb norm is converged in r_max") {
  const double eps = hydrogen(55.0 - 0.2);
  const auto a = channel_wave(LongRangeModel::coulomb(3.0, 16000.0, 0.004), {0, 0}, eps);
  const auto b = channel_wave(LongRangeModel::coulomb(3.0, 32000.0, 0.004), {0, 0}, eps);
  CHECK(a.norm2 > 0.0);
  CHECK(std::abs(a.norm2 - b.norm2) < 1e-8 * a.norm2);
}

TEST_CASE("wronskian and quadrature overlaps agree: hard wall sweep") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> mode(1, 20);
  std::uniform_real_distribution<double> jitter(-0.45, 0.45);
  std::uniform_real_distribution<double> cut(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = LongRangeModel::hard_wall(cut(rng), 10.0, 0.002);
    const int m1 = mode(rng);
    int m2 = mode(rng);
    if (m2 == m1) m2 = m1 % 20 + 1;
    const auto e = [](double m) { return m * m * kPi * kPi / 200.0; };
    const auto w1 = unit(channel_wave(model, {0, 0}, e(m1 + jitter(rng))));
    const auto w2 = unit(channel_wave(model, {0, 0}, e(m2 + jitter(rng))));
    const double q = quadrature_overlap(w1, w2);
    CAPTURE(trial);
    CHECK(std::abs(wronskian_overlap(w1, w2) - q) < 1e-8 * std::max(1.0, std::abs(q)));
  }
}

TEST_CASE("wronskian and quadrature overlaps agree: coulomb sweep near n = 55") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> nu(52.0, 58.0);
  std::uniform_real_distribution<double> cut(1.0, 8.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = LongRangeModel::coulomb(cut(rng), 16000.0, 0.004);
    const int l = trial % 3;
    const auto w1 = unit(channel_wave(model, {0, l}, hydrogen(nu(rng))));
    const auto w2 = unit(channel_wave(model, {0, l}, hydrogen(nu(rng))));
    const double q = quadrature_overlap(w1, w2);
    CAPTURE(trial);
    CHECK(std::abs(wronskian_overlap(w1, w2) - q) < 1e-8 * std::max(1.0, std::abs(q)));
  }
}
