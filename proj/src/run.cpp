#include "qhbound/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qhbound/error.hpp"
#include "qhbound/output.hpp"

namespace qhbound {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int rank(Subcommand s) {
  switch (s) {
    case Subcommand::spectrum: return 0;
    case Subcommand::metric:
    case Subcommand::fig1: return 1;
    case Subcommand::evolve: return 2;
    case Subcommand::selftest: break;
  }
  throw Error(Errc::InvalidArgument, "selftest does not run the pipeline");
}

std::string spectrum_csv(const std::string& hash, const SpectrumChunk& chunk) {
  const std::size_t n = chunk.problem->channels.size();
  std::vector<std::string> cols{"index", "energy_hartree", "residual"};
  for (std::size_t i = 1; i <= n; ++i) cols.push_back("Z_" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) cols.push_back("X_" + std::to_string(i));
  CsvTable t(hash, cols);
  for (std::size_t k = 0; k < chunk.size(); ++k) {
    const auto& s = chunk.states[k];
    std::vector<double> row{static_cast<double>(k + 1), s.energy, s.residual};
    for (Eigen::Index i = 0; i < s.Z.size(); ++i) row.push_back(s.Z[i]);
    for (Eigen::Index i = 0; i < s.X.size(); ++i) row.push_back(s.X[i]);
    t.add_row(row);
  }
  return t.str();
}

std::string metric_csv(const std::string& hash, const MetricMatrix& g) {
  std::vector<std::string> cols{"energy_hartree"};
  for (std::size_t j = 0; j < g.dim(); ++j) cols.push_back(format_number(g.energies[j]));
  CsvTable t(hash, cols);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    std::vector<double> row{g.energies[i]};
    for (std::size_t j = 0; j < g.dim(); ++j)
      row.push_back(g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    t.add_row(row);
  }
  return t.str();
}

}  // namespace

std::optional<Subcommand> parse_subcommand(const std::string& name) {
  if (name == "spectrum") return Subcommand::spectrum;
  if (name == "metric") return Subcommand::metric;
  if (name == "fig1") return Subcommand::fig1;
  if (name == "evolve") return Subcommand::evolve;
  if (name == "selftest") return Subcommand::selftest;
  return std::nullopt;
}

std::string subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::metric: return "metric";
    case Subcommand::fig1: return "fig1";
    case Subcommand::evolve: return "evolve";
    case Subcommand::selftest: return "selftest";
  }
  return "?";
}

Pipeline run_pipeline(const RunConfig& cfg, Subcommand stage, unsigned threads) {
  const int depth = rank(stage);
  Pipeline p;
  SolveOptions opt;
  opt.max_states = cfg.max_states;
  opt.threads = threads;
  auto t0 = clock_type::now();
  p.chunk = solve_chunk(cfg.problem, cfg.e_lo, cfg.e_hi, opt);
  p.elapsed_spectrum = seconds_since(t0);
  if (depth < 1) return p;

  if (p.chunk.size() < 2) throw Error(Errc::EmptyMatrix, "fewer than two states in the window");
  t0 = clock_type::now();
  p.metric = build_metric(p.chunk, threads);
  p.factorization = factorize(*p.metric);
  p.elapsed_metric = seconds_since(t0);
  p.kappa = kappa_index(*p.metric, cfg.kappa_n);
  p.kappa_n = cfg.kappa_n != 0 ? cfg.kappa_n : std::min(p.metric->dim(), p.metric->dim() * (p.metric->dim() - 1) / 2);
  if (depth < 2) return p;

  if (!cfg.wavepacket) throw Error(Errc::ValidationError, "evolve needs a wavepacket section");
  const auto proj = gaussian_projections(*cfg.wavepacket, p.chunk, threads);
  p.coefficients = coefficients(proj, *p.factorization, p.chunk.energies());
  const double mean_n = cfg.mean_n();
  const double period = kepler_scales(mean_n).period;
  const double span = cfg.times.t_max > 0.0 ? cfg.times.t_max : cfg.times.periods * period;
  p.series = evolve(*p.coefficients, *p.factorization, uniform_times(span, cfg.times.samples), period, threads);
  return p;
}

ResultBundle make_bundle(const RunConfig& cfg, Subcommand stage, const Pipeline& p) {
  const std::string hash = cfg.hash();
  ResultBundle b;
  auto& s = b.summary;
  s["config_hash"] = hash;
  s["tool"] = kToolVersion;
  s["subcommand"] = subcommand_name(stage);
  s["window"] = {cfg.e_lo, cfg.e_hi};
  s["states"] = p.chunk.size();
  s["warnings"] = p.chunk.warnings;
  if (stage == Subcommand::spectrum) b.files.emplace_back("spectrum.csv", spectrum_csv(hash, p.chunk));

  if (p.metric) {
    const auto& g = *p.metric;
    const auto& f = *p.factorization;
    const std::size_t n = g.dim();
    double max_off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        max_off = std::max(max_off, std::abs(g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    nlohmann::ordered_json m;
    m["config_hash"] = hash;
    m["dim"] = n;
    m["min_eigenvalue"] = f.eigenvalues[0];
    m["max_eigenvalue"] = f.eigenvalues[f.eigenvalues.size() - 1];
    m["condition"] = f.condition;
    m["kappa"] = p.kappa;
    m["kappa_n"] = p.kappa_n;
    m["max_offdiagonal"] = max_off;
    s["metric"] = m;
    if (stage == Subcommand::metric) {
      b.files.emplace_back("metric.csv", metric_csv(hash, g));
      b.files.emplace_back("metric_summary.json", m.dump(2) + "\n");
    }
    if (stage == Subcommand::fig1) {
      const std::size_t pairs = n * (n - 1) / 2;
      const auto series = sorted_offdiagonals(g, std::min(std::max<std::size_t>(n / 2, 1), pairs));
      CsvTable t(hash, {"rank", "abs_offdiagonal"});
      for (std::size_t k = 0; k < series.size(); ++k) t.add_row({static_cast<double>(k + 1), series[k]});
      b.files.emplace_back("fig1.csv", t.str());
    }
  }

  if (p.series) {
    const auto& c = *p.coefficients;
    const auto& ser = *p.series;
    CsvTable f2(hash, {"t_au", "t_kepler", "abs_c_naive", "abs_c_correct", "re_c_naive", "im_c_naive", "re_c_correct",
                       "im_c_correct"});
    CsvTable f3(hash, {"t_au", "t_kepler", "norm_naive", "norm_correct"});
    const double c0 = std::abs(ser.c_naive[0]);
    double max_diff = 0.0, max_diff_renorm = 0.0, norm_dev = 0.0, lo = ser.norm_naive[0], hi = lo, mean = 0.0;
    for (std::size_t j = 0; j < ser.times.size(); ++j) {
      const auto cn = ser.c_naive[j];
      const auto cc = ser.c_correct[j];
      f2.add_row({ser.times[j], ser.times_kepler[j], std::abs(cn), std::abs(cc), cn.real(), cn.imag(), cc.real(), cc.imag()});
      f3.add_row({ser.times[j], ser.times_kepler[j], ser.norm_naive[j], ser.norm_correct[j]});
      max_diff = std::max(max_diff, std::abs(std::abs(cn) - std::abs(cc)));
      if (c0 > 0.0) max_diff_renorm = std::max(max_diff_renorm, std::abs(std::abs(cn) / c0 - std::abs(cc)));
      norm_dev = std::max(norm_dev, std::abs(ser.norm_correct[j] - 1.0));
      lo = std::min(lo, ser.norm_naive[j]);
      hi = std::max(hi, ser.norm_naive[j]);
      mean += ser.norm_naive[j];
    }
    mean /= static_cast<double>(ser.times.size());
    b.files.emplace_back("fig2.csv", f2.str());
    b.files.emplace_back("fig3.csv", f3.str());
    nlohmann::ordered_json d;
    d["mean_n"] = cfg.mean_n();
    d["kepler_period"] = ser.period;
    d["sum_p2"] = c.p.squaredNorm();
    d["span_residual"] = c.span_residual;
    d["c_naive0"] = {ser.c_naive[0].real(), ser.c_naive[0].imag()};
    d["c_correct0"] = {ser.c_correct[0].real(), ser.c_correct[0].imag()};
    d["max_abs_c_difference"] = max_diff;
    // naive curve rescaled to |C_naive(0)| = 1; nonzero means the profiles differ in shape
    d["max_abs_c_difference_renormalized"] = max_diff_renorm;
    d["max_correct_norm_deviation"] = norm_dev;
    d["naive_norm_min"] = lo;
    d["naive_norm_max"] = hi;
    d["naive_norm_mean"] = mean;
    s["dynamics"] = d;
  }
  b.files.emplace_back("bundle.json", s.dump(2) + "\n");
  return b;
}

ResultBundle run(Subcommand stage, const RunConfig& cfg, const std::filesystem::path& out_dir, unsigned threads) {
  const auto p = run_pipeline(cfg, stage, threads);
  auto bundle = make_bundle(cfg, stage, p);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::InvalidArgument, "cannot create output directory " + out_dir.string());
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (const auto& [name, text] : bundle.files) files.emplace_back(out_dir / name, text);
  write_all_atomic(files);
  return bundle;
}

}  // namespace qhbound
