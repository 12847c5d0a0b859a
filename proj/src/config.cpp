#include "qhbound/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qhbound/coulomb.hpp"
#include "qhbound/error.hpp"

namespace qhbound {

namespace {

using nlohmann::json;

struct Position {
  std::size_t line = 1, column = 1;
};

Position position_of(const std::string& text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Validation context: turns a dotted key path into "file:line: path: message"
// by locating the keys in the source text in order.
class Context {
 public:
  Context(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (auto line = line_of(path)) msg << ":" << *line;
    msg << ": " << path << ": " << what;
    throw Error(Errc::ValidationError, msg.str());
  }

 private:
  std::optional<std::size_t> line_of(const std::string& path) const {
    std::size_t at = 0;
    std::istringstream parts(path);
    std::string key;
    bool found = false;
    while (std::getline(parts, key, '.')) {
      const auto bracket = key.find('[');
      if (bracket != std::string::npos) key = key.substr(0, bracket);
      const auto hit = text_.find("\"" + key + "\"", at);
      if (hit == std::string::npos) break;
      at = hit;
      found = true;
    }
    if (!found) return std::nullopt;
    return position_of(text_, at).line;
  }

  const std::string& text_;
  std::string source_;
};

void only_keys(const Context& cx, const json& obj, const std::string& path, std::set<std::string> allowed) {
  if (!obj.is_object()) cx.fail(path, "must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) cx.fail(path.empty() ? k : path + "." + k, "unknown key");
}

double number(const Context& cx, const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) cx.fail(path + "." + key, "required");
  const auto& v = obj.at(key);
  if (!v.is_number()) cx.fail(path + "." + key, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) cx.fail(path + "." + key, "must be finite");
  return d;
}

double number_or(const Context& cx, const json& obj, const std::string& path, const std::string& key, double fallback) {
  return obj.contains(key) ? number(cx, obj, path, key) : fallback;
}

std::size_t count(const Context& cx, const json& obj, const std::string& path, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) cx.fail(path + "." + key, "must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> vector_of(const Context& cx, const json& v, const std::string& path) {
  if (!v.is_array()) cx.fail(path, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) cx.fail(path, "must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Eigen::MatrixXd matrix_of(const Context& cx, const json& v, const std::string& path, std::size_t n) {
  if (!v.is_array() || v.size() != n) cx.fail(path, "must be an N_ch x N_ch array");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = vector_of(cx, v[i], path);
    if (row.size() != n) cx.fail(path, "must be an N_ch x N_ch array");
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return m;
}

}  // namespace

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

double RunConfig::mean_n() const {
  if (!wavepacket) return 0.0;
  if (wavepacket->mean_n > 0.0) return wavepacket->mean_n;
  return std::sqrt(wavepacket->resolved_center() / 2.0);
}

void RunConfig::set_max_states(std::size_t n) {
  if (n == 0) throw Error(Errc::ValidationError, "max_states must be >= 1");
  max_states = n;
  auto j = json::parse(canonical);
  j["window"]["max_states"] = n;
  canonical = j.dump();
}

void RunConfig::set_kappa_n(std::size_t n) {
  kappa_n = n;
  auto j = json::parse(canonical);
  j["kappa"]["n"] = n;
  canonical = j.dump();
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto pos = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << source << ":" << pos.line << ":" << pos.column << ": malformed JSON";
    throw Error(Errc::ParseError, msg.str());
  }
  const Context cx(text, source);
  only_keys(cx, root, "", {"model", "channels", "kmatrix", "window", "wavepacket", "times", "kappa"});
  for (const char* s : {"model", "channels", "window"})
    if (!root.contains(s)) cx.fail(s, "section required");

  RunConfig cfg;
  cfg.source = source;

  // channels
  const auto& jc = root["channels"];
  only_keys(cx, jc, "channels", {"thresholds", "l"});
  if (!jc.contains("thresholds")) cx.fail("channels.thresholds", "required");
  ChannelSet channels;
  channels.thresholds = vector_of(cx, jc["thresholds"], "channels.thresholds");
  const std::size_t n = channels.size();
  if (n == 0) cx.fail("channels.thresholds", "at least one channel required");
  for (std::size_t i = 1; i < n; ++i)
    if (!(channels.thresholds[i] >= channels.thresholds[i - 1])) cx.fail("channels.thresholds", "thresholds must be ascending");
  channels.angular_momentum.assign(n, 0);
  if (jc.contains("l")) {
    const auto& jl = jc["l"];
    if (!jl.is_array() || jl.size() != n) cx.fail("channels.l", "one angular momentum per threshold required");
    for (std::size_t i = 0; i < n; ++i) {
      if (!jl[i].is_number_integer() || jl[i].get<int>() < 0) cx.fail("channels.l", "angular momentum must be an integer >= 0");
      channels.angular_momentum[i] = jl[i].get<int>();
    }
  }

  // window
  const auto& jw = root["window"];
  only_keys(cx, jw, "window", {"e_lo", "e_hi", "n_lo", "n_hi", "max_states"});
  const auto bound = [&](const char* e_key, const char* n_key) {
    if (jw.contains(e_key) == jw.contains(n_key))
      cx.fail(std::string("window.") + e_key, std::string("give exactly one of ") + e_key + " and " + n_key);
    if (jw.contains(e_key)) return number(cx, jw, "window", e_key);
    const double nu = number(cx, jw, "window", n_key);
    if (!(nu > 0.0)) cx.fail(std::string("window.") + n_key, "must be > 0");
    return channels.thresholds.front() - 0.5 / (nu * nu);
  };
  cfg.e_lo = bound("e_lo", "n_lo");
  cfg.e_hi = bound("e_hi", "n_hi");
  if (!(cfg.e_lo < cfg.e_hi)) cx.fail("window", "window needs E_lo < E_hi");
  if (jw.contains("max_states")) {
    cfg.max_states = count(cx, jw, "window", "max_states");
    if (cfg.max_states == 0) cx.fail("window.max_states", "must be >= 1");
  }

  // model
  const auto& jm = root["model"];
  only_keys(cx, jm, "model", {"kind", "r0", "wall_radius", "r_max", "step"});
  if (!jm.contains("kind") || !jm["kind"].is_string()) cx.fail("model.kind", "must be \"coulomb\" or \"hard_wall\"");
  const std::string kind = jm["kind"].get<std::string>();
  const double r0 = number(cx, jm, "model", "r0");
  if (!(r0 >= 0.0)) cx.fail("model.r0", "must be >= 0");
  std::optional<LongRangeModel> model;
  if (kind == "hard_wall") {
    if (jm.contains("r_max")) cx.fail("model.r_max", "not used by the hard-wall model (use wall_radius)");
    const double L = number(cx, jm, "model", "wall_radius");
    if (!(L > r0)) cx.fail("model.wall_radius", "must exceed r0");
    const double step = number_or(cx, jm, "model", "step", 0.005);
    if (!(step > 0.0) || step > (L - r0) / 4.0) cx.fail("model.step", "must be > 0 and at most (L - r0)/4");
    for (int l : channels.angular_momentum)
      if (l != 0) cx.fail("channels.l", "hard-wall model supports l = 0 only");
    model = LongRangeModel::hard_wall(r0, L, step);
  } else if (kind == "coulomb") {
    if (jm.contains("wall_radius")) cx.fail("model.wall_radius", "not used by the coulomb model");
    if (!(r0 == 0.0 || r0 >= LongRangeModel::kMinCoulombR0)) cx.fail("model.r0", "coulomb r0 must be 0 or >= 0.25");
    if (!(cfg.e_hi < channels.thresholds.front())) cx.fail("window", "coulomb window must lie below the lowest threshold");
    const double nu_max = coulomb::effective_quantum_number(cfg.e_hi - channels.thresholds.front());
    const double need = coulomb_r_max_for(nu_max);
    const double r_max = number_or(cx, jm, "model", "r_max", need);
    if (r_max < need) {
      std::ostringstream msg;
      msg << "must be >= " << need << " (4 nu^2 + 40 nu + 50 at the window top)";
      cx.fail("model.r_max", msg.str());
    }
    const double step = number_or(cx, jm, "model", "step", 0.004);
    if (!(step > 0.0) || step > 0.02) cx.fail("model.step", "sqrt(r) step must be in (0, 0.02]");
    model = LongRangeModel::coulomb(r0, r_max, step);
  } else {
    cx.fail("model.kind", "must be \"coulomb\" or \"hard_wall\"");
  }

  // K matrix
  KMatrixSpec k = KMatrixSpec::zero(n);
  if (root.contains("kmatrix")) {
    const auto& jk = root["kmatrix"];
    only_keys(cx, jk, "kmatrix", {"base", "linear", "e_ref", "poles"});
    if (jk.contains("base")) k.base = matrix_of(cx, jk["base"], "kmatrix.base", n);
    if (jk.contains("linear")) k.linear = matrix_of(cx, jk["linear"], "kmatrix.linear", n);
    k.e_ref = number_or(cx, jk, "kmatrix", "e_ref", 0.0);
    if (jk.contains("poles")) {
      if (!jk["poles"].is_array()) cx.fail("kmatrix.poles", "must be an array");
      for (const auto& jp : jk["poles"]) {
        only_keys(cx, jp, "kmatrix.poles", {"gamma", "position"});
        if (!jp.contains("gamma")) cx.fail("kmatrix.poles.gamma", "required");
        const auto g = vector_of(cx, jp["gamma"], "kmatrix.poles.gamma");
        if (g.size() != n) cx.fail("kmatrix.poles.gamma", "pole strength vector must have N_ch entries");
        k.poles.push_back({Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(n)),
                           number(cx, jp, "kmatrix.poles", "position")});
      }
    }
    try {
      k.validate(n);
    } catch (const Error& e) {
      cx.fail("kmatrix", e.what());
    }
  }

  auto problem = std::make_shared<SpectrumProblem>(SpectrumProblem{channels, *model, std::move(k)});
  try {
    check_window(*problem, cfg.e_lo, cfg.e_hi);
  } catch (const Error& e) {
    cx.fail("window", e.what());
  }
  cfg.problem = std::move(problem);

  if (root.contains("wavepacket")) {
    const auto& jp = root["wavepacket"];
    only_keys(cx, jp, "wavepacket", {"mean_n", "center", "width", "channel"});
    WavepacketSpec wp;
    wp.mean_n = number_or(cx, jp, "wavepacket", "mean_n", 0.0);
    wp.center = number_or(cx, jp, "wavepacket", "center", 0.0);
    wp.width = number(cx, jp, "wavepacket", "width");
    if (jp.contains("channel")) {
      const std::size_t c = count(cx, jp, "wavepacket", "channel");
      if (c < 1 || c > n) cx.fail("wavepacket.channel", "must be a channel number in 1..N_ch");
      wp.channel = c - 1;
    }
    if (jp.contains("mean_n") && !(wp.mean_n > 0.0)) cx.fail("wavepacket.mean_n", "must be > 0");
    try {
      wp.validate(r0);
    } catch (const Error& e) {
      cx.fail("wavepacket", e.what());
    }
    cfg.wavepacket = wp;
  }

  if (root.contains("times")) {
    const auto& jt = root["times"];
    only_keys(cx, jt, "times", {"periods", "samples", "t_max"});
    cfg.times.periods = number_or(cx, jt, "times", "periods", cfg.times.periods);
    if (jt.contains("samples")) cfg.times.samples = count(cx, jt, "times", "samples");
    cfg.times.t_max = number_or(cx, jt, "times", "t_max", 0.0);
    if (!(cfg.times.periods > 0.0)) cx.fail("times.periods", "must be > 0");
    if (cfg.times.samples < 2) cx.fail("times.samples", "must be >= 2");
    if (cfg.times.t_max < 0.0) cx.fail("times.t_max", "must be >= 0");
  }

  if (root.contains("kappa")) {
    const auto& jk = root["kappa"];
    only_keys(cx, jk, "kappa", {"n"});
    if (jk.contains("n")) cfg.kappa_n = count(cx, jk, "kappa", "n");
  }

  cfg.canonical = root.dump();
  return cfg;
}

}  // namespace qhbound
