#include "qhbound/selftest.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qhbound/config.hpp"
#include "qhbound/error.hpp"
#include "qhbound/run.hpp"

namespace qhbound {

namespace {

constexpr double kPi = std::numbers::pi;

double hydrogen(double n) { return -0.5 / (n * n); }

template <class F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw ") + e.what()};
  }
}

ChannelWave unit(const ChannelWave& w) { return w.scaled(1.0 / std::sqrt(w.norm2)); }

}  // namespace

CheckResult check_hydrogen_spectrum() {
  const std::string name = "hydrogen spectrum n=50..60";
  return guarded(name, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = parse_config_text(R"({
      "model": {"kind": "coulomb", "r0": 0.0},
      "channels": {"thresholds": [0.0]},
      "window": {"n_lo": 49.5, "n_hi": 60.5}
    })");
    const auto p = run_pipeline(cfg, Subcommand::spectrum, 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    const bool count_ok = p.chunk.size() == 11;
    if (count_ok)
      for (int n = 50; n <= 60; ++n) {
        const double e = hydrogen(n);
        worst = std::max(worst, std::abs(p.chunk.states[static_cast<std::size_t>(n - 50)].energy - e) / std::abs(e));
      }
    std::ostringstream d;
    d << p.chunk.size() << " roots, max rel error " << worst << ", " << secs << " s";
    return CheckResult{name, count_ok && worst < 1e-9 && secs < 10.0, d.str()};
  });
}

CheckResult check_hard_wall_oracle() {
  const std::string name = "hard-wall roots and G12 oracle";
  return guarded(name, [&] {
    auto cfg = parse_config_text(R"({
      "model": {"kind": "hard_wall", "r0": 1.0, "wall_radius": 10.0, "step": 0.005},
      "channels": {"thresholds": [0.0]},
      "window": {"e_lo": 0.0, "e_hi": 5.0}
    })");
    SolveOptions opt;
    opt.keep_samples = true;
    const auto chunk = solve_chunk(cfg.problem, cfg.e_lo, cfg.e_hi, opt);
    double worst = 0.0;
    const bool count_ok = chunk.size() == 10;
    if (count_ok)
      for (std::size_t m = 1; m <= 10; ++m)
        worst = std::max(worst, std::abs(chunk.states[m - 1].energy - m * m * kPi * kPi / 200.0));
    double g12 = 0.0, quad = 0.0;
    if (chunk.size() >= 2) {
      const auto g = build_metric(chunk);
      const auto& a = chunk.states[0];
      const auto& b = chunk.states[1];
      g12 = g.entries(0, 1);
      quad = a.X[0] * b.X[0] * quadrature_overlap(a.waves[0], b.waves[0]);
    }
    std::ostringstream d;
    d.precision(10);
    d << chunk.size() << " roots, max error " << worst << "; G12 = " << g12 << ", quadrature " << quad;
    return CheckResult{name, count_ok && worst < 1e-10 && std::abs(g12 - quad) < 1e-8, d.str()};
  });
}

CheckResult check_overlap_sweep() {
  const std::string name = "overlap oracle sweep";
  return guarded(name, [&] {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int pairs = 0;
    for (int t = 0; t < 20; ++t) {
      const auto model = LongRangeModel::hard_wall(3.0 * u(rng), 10.0, 0.002);
      const auto e = [&] { const double m = 1.0 + 19.0 * u(rng); return m * m * kPi * kPi / 200.0; };
      const auto w1 = unit(channel_wave(model, {0, 0}, e()));
      const auto w2 = unit(channel_wave(model, {0, 0}, e()));
      worst = std::max(worst, std::abs(wronskian_overlap(w1, w2) - quadrature_overlap(w1, w2)));
      ++pairs;
    }
    for (int t = 0; t < 12; ++t) {
      const auto model = LongRangeModel::coulomb(1.0 + 7.0 * u(rng), coulomb_r_max_for(60.0), 0.004);
      const int l = t % 3;
      const auto w1 = unit(channel_wave(model, {0, l}, hydrogen(50.0 + 9.0 * u(rng))));
      const auto w2 = unit(channel_wave(model, {0, l}, hydrogen(50.0 + 9.0 * u(rng))));
      worst = std::max(worst, std::abs(wronskian_overlap(w1, w2) - quadrature_overlap(w1, w2)));
      ++pairs;
    }
    std::ostringstream d;
    d << pairs << " pairs, max |wronskian - quadrature| " << worst;
    return CheckResult{name, pairs >= 30 && worst < 1e-8, d.str()};
  });
}

CheckResult check_hermitian_limit() {
  const std::string name = "hermitian limit r0=0";
  return guarded(name, [&] {
    const auto cfg = parse_config_text(R"({
      "model": {"kind": "coulomb", "r0": 0.0},
      "channels": {"thresholds": [0.0]},
      "window": {"n_lo": 30.5, "n_hi": 90.5},
      "wavepacket": {"mean_n": 55, "width": 300},
      "times": {"periods": 10, "samples": 2048}
    })");
    const auto p = run_pipeline(cfg, Subcommand::evolve, 0);
    double diff = 0.0;
    for (std::size_t j = 0; j < p.series->times.size(); ++j)
      diff = std::max(diff, std::abs(std::abs(p.series->c_naive[j]) - std::abs(p.series->c_correct[j])));
    std::ostringstream d;
    d << "kappa " << p.kappa << ", max ||C_naive| - |C_correct|| " << diff;
    return CheckResult{name, p.kappa < 1e-8 && diff < 1e-6, d.str()};
  });
}

CheckResult check_two_state_toy() {
  const std::string name = "two-state closed forms";
  return guarded(name, [&] {
    const double g = 0.1, e1 = -1e-4, e2 = -0.6e-4, de = e2 - e1;
    Eigen::MatrixXd m(2, 2);
    m << 1.0, g, g, 1.0;
    const auto f = factorize(make_metric(m));
    const Eigen::VectorXd b0 = Eigen::VectorXd::Constant(2, 1.0 / std::sqrt(2.0 * (1.0 + g)));
    const Eigen::VectorXd p = m * b0;
    const std::vector<double> e{e1, e2};
    const auto c = coefficients(p, f, e);
    const auto times = uniform_times(4.0 * kPi / de, 401);
    const auto cn = naive_autocorrelation(p, e, times);
    const auto cc = correct_autocorrelation(c, f, times);
    const auto nn = naive_norm_series(p, e, m, times);
    double err_c = 0.0, lo = nn[0], hi = nn[0];
    for (std::size_t j = 0; j < times.size(); ++j) {
      err_c = std::max(err_c, std::abs(std::abs(cc[j]) - std::abs(std::cos(de * times[j] / 2.0))));
      lo = std::min(lo, nn[j]);
      hi = std::max(hi, nn[j]);
    }
    const double err0 = std::abs(cn[0] - 1.1);
    const double err_range = std::max(std::abs(lo - 0.99), std::abs(hi - 1.21));
    std::ostringstream d;
    d << "|C_naive(0) - 1.1| " << err0 << ", |C_correct| error " << err_c << ", norm range error " << err_range;
    return CheckResult{name, err0 < 1e-12 && err_c < 1e-12 && err_range < 1e-12, d.str()};
  });
}

std::vector<CheckResult> selftest_suite() {
  return {check_hard_wall_oracle(), check_hydrogen_spectrum(), check_overlap_sweep(), check_hermitian_limit(),
          check_two_state_toy()};
}

}  // namespace qhbound
