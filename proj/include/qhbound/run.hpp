#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qhbound/config.hpp"
#include "qhbound/dynamics.hpp"
#include "qhbound/metric.hpp"

namespace qhbound {

enum class Subcommand { spectrum, metric, fig1, evolve, selftest };

std::optional<Subcommand> parse_subcommand(const std::string& name);
std::string subcommand_name(Subcommand s);

/// Intermediate results of the pipeline, filled up to the requested stage.
struct Pipeline {
  SpectrumChunk chunk;
  std::optional<MetricMatrix> metric;
  std::optional<MetricFactorization> factorization;
  double kappa = 0.0;
  std::size_t kappa_n = 0;
  std::optional<StateCoefficients> coefficients;
  std::optional<AutocorrelationSeries> series;
  double elapsed_spectrum = 0.0;  // seconds
  double elapsed_metric = 0.0;    // build + factorize, seconds
};

/// Runs spectrum -> metric -> dynamics as far as `stage` needs.
Pipeline run_pipeline(const RunConfig& cfg, Subcommand stage, unsigned threads = 0);

/// Output files (name, contents) and the bundle summary.
struct ResultBundle {
  nlohmann::ordered_json summary;
  std::vector<std::pair<std::string, std::string>> files;
};

ResultBundle make_bundle(const RunConfig& cfg, Subcommand stage, const Pipeline& p);

/// Computes and writes all files for `stage` into out_dir (created if
/// missing). Nothing is written if any step fails.
ResultBundle run(Subcommand stage, const RunConfig& cfg, const std::filesystem::path& out_dir, unsigned threads = 0);

}  // namespace qhbound
