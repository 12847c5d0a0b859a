#include "qhbound/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qhbound/coulomb.hpp"
#include "qhbound/error.hpp"
#include "qhbound/numerov.hpp"

namespace qhbound {

namespace {

constexpr double kPi = std::numbers::pi;

void require_closed(const LongRangeModel& model, double eps) {
  if (model.kind() == ModelKind::coulomb && !(eps < 0.0)) {
    std::ostringstream msg;
    msg << "coulomb channel needs kinetic energy < 0, got " << eps;
    throw Error(Errc::OpenChannel, msg.str());
  }
  if (model.kind() == ModelKind::hard_wall && !(eps > 0.0)) {
    std::ostringstream msg;
    msg << "hard-wall channel needs kinetic energy > 0, got " << eps;
    throw Error(Errc::OpenChannel, msg.str());
  }
}

// u(r) and du/dr from the sqrt-mesh variables u = sqrt(x) v.
struct RadialValue {
  double u, du;
};

RadialValue from_mesh(double x, double v, double dv) {
  const double sx = std::sqrt(x);
  return {sx * v, v / (4.0 * x * sx) + dv / (2.0 * sx)};
}

// Everything the Coulomb constructions share: the regular solution from the
// origin, the decaying solution from r_max, and their matching at r_m where
// the Milne amplitude is known.
struct CoulombSolve {
  double h = 0.0;
  std::size_t last = 0;      // outermost node
  std::size_t base = 0;      // first node with reliable inward data
  std::size_t match = 0;     // matching node r_m ~ nu^2 / 2
  std::vector<double> q;     // sqrt-mesh equation coefficient
  std::vector<double> vf;    // regular solution (mesh variable)
  std::vector<double> vF;    // decaying solution, unit convention
  double theta = 0.0;
  double lead = 0.0;

  double x(std::size_t i) const { return h * static_cast<double>(i); }
  RadialValue f_at(std::size_t i) const { return from_mesh(x(i), vf[i], numerov::derivative(vf, q, h, i)); }
  RadialValue F_at(std::size_t i) const { return from_mesh(x(i), vF[i], numerov::derivative(vF, q, h, i)); }

  // Irregular partner at node i from the Milne phase of the regular solution.
  RadialValue g_at(std::size_t i, double eps, int l) const {
    const double r = x(i) * x(i);
    const auto w = coulomb::milne_amplitude(r, eps, l);
    const auto f = f_at(i);
    const double s = f.u / w.value;
    const double c = w.value * f.du - w.deriv * f.u;
    if (std::abs(std::hypot(s, c) - 1.0) > 1e-6)
      throw Error(Errc::BoundaryMismatch, "regular solution normalisation disagrees with the Milne amplitude");
    return {-w.value * c, -w.deriv * c + s / w.value};
  }
};

CoulombSolve solve_coulomb(const LongRangeModel& model, Channel channel, double eps) {
  require_closed(model, eps);
  const double nu = coulomb::effective_quantum_number(eps);
  if (nu < LongRangeModel::kMinCoulombNu) {
    std::ostringstream msg;
    msg << "coulomb channel functions need nu >= " << LongRangeModel::kMinCoulombNu << ", got " << nu;
    throw Error(Errc::InvalidArgument, msg.str());
  }
  const RadialGrid& grid = model.grid();
  const int l = channel.l;

  CoulombSolve cs;
  cs.h = grid.step();
  cs.last = grid.size() - 1;
  cs.lead = coulomb::regular_lead(l, eps);
  cs.theta = theta_phase(model, channel, eps);
  const std::size_t inner = static_cast<std::size_t>(std::ceil(std::sqrt(LongRangeModel::kMinCoulombR0) / cs.h - 1e-9));
  cs.base = model.r0() > 0.0 ? model.r0_node() : inner;
  cs.match = static_cast<std::size_t>(std::llround(nu / std::numbers::sqrt2 / cs.h));
  if (cs.match + 3 > cs.last || cs.match < cs.base + 3)
    throw Error(Errc::InvalidArgument, "grid does not reach past nu^2/2 for this energy, or r0 is beyond it");

  cs.q.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) cs.q[i] = coulomb::sqrt_mesh_q(cs.x(i), eps, l);

  // regular solution: series near the origin, then outward
  cs.vf.assign(grid.size(), 0.0);
  const std::size_t series_end =
      std::min(static_cast<std::size_t>(std::floor(1.0 / cs.h)), cs.match - 1);
  for (std::size_t i = 1; i <= series_end; ++i)
    cs.vf[i] = coulomb::regular_series(cs.x(i) * cs.x(i), eps, l).value / std::sqrt(cs.x(i));
  numerov::propagate(cs.q, cs.h, cs.vf, series_end, cs.match + 2, false);

  // decaying solution: WKB ratio seed in the forbidden region, then inward
  if (!(cs.q[cs.last] < 0.0))
    throw Error(Errc::BoundaryMismatch, "r_max is not in the classically forbidden region");
  std::vector<double> vraw(grid.size(), 0.0);
  vraw[cs.last] = 1.0;
  vraw[cs.last - 1] = std::exp(0.5 * cs.h * (std::sqrt(-cs.q[cs.last]) + std::sqrt(-cs.q[cs.last - 1])));
  const std::size_t low = model.r0() > 0.0 ? cs.base - 1 : cs.base;
  numerov::propagate(cs.q, cs.h, vraw, cs.last - 1, low, true);

  // project the decaying solution on (f, g) at r_m: raw = a f + b g
  const auto f = cs.f_at(cs.match);
  const auto g = cs.g_at(cs.match, eps, l);
  const auto raw = from_mesh(cs.x(cs.match), vraw[cs.match], numerov::derivative(vraw, cs.q, cs.h, cs.match));
  const double a = raw.u * g.du - raw.du * g.u;
  const double b = f.u * raw.du - f.du * raw.u;
  const double theta_num = std::atan2(-b, a);
  if (std::abs(reduce_half_turn(theta_num - cs.theta)) > 1e-6) {
    std::ostringstream msg;
    msg << "matched phase " << theta_num << " differs from boundary phase " << cs.theta;
    throw Error(Errc::BoundaryMismatch, msg.str());
  }
  const double scale = a * std::cos(cs.theta) - b * std::sin(cs.theta);
  cs.vF = std::move(vraw);
  for (double& v : cs.vF) v /= scale;

  double peak = 0.0;
  for (std::size_t i = low; i <= cs.last; ++i) peak = std::max(peak, std::abs(std::sqrt(cs.x(i)) * cs.vF[i]));
  if (std::abs(std::sqrt(cs.x(cs.last)) * cs.vF[cs.last]) > 1e-8 * peak)
    throw Error(Errc::BoundaryMismatch, "r_max too small: channel wave has not decayed");
  return cs;
}

}  // namespace

void ChannelSet::validate() const {
  if (thresholds.empty()) throw Error(Errc::ValidationError, "channel set must have at least one channel");
  if (angular_momentum.size() != thresholds.size())
    throw Error(Errc::ValidationError, "one angular momentum per threshold required");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (!(thresholds[i] >= thresholds[i - 1]))
      throw Error(Errc::ValidationError, "thresholds must be ascending");
  for (int l : angular_momentum)
    if (l < 0) throw Error(Errc::ValidationError, "angular momentum must be >= 0");
}

LongRangeModel::LongRangeModel(ModelKind kind, double r0, double wall,
                               std::shared_ptr<const RadialGrid> grid)
    : kind_(kind), r0_(r0), wall_radius_(wall), grid_(std::move(grid)), r0_node_(grid_->nearest(r0)) {}

LongRangeModel LongRangeModel::hard_wall(double r0, double wall_radius, double step) {
  if (!(r0 >= 0.0) || !(wall_radius > r0))
    throw Error(Errc::ValidationError, "hard wall needs 0 <= r0 < L");
  return LongRangeModel(ModelKind::hard_wall, r0, wall_radius,
                        std::make_shared<const RadialGrid>(RadialGrid::uniform(r0, wall_radius, step)));
}

LongRangeModel LongRangeModel::coulomb(double r0, double r_max, double x_step) {
  if (!(r0 == 0.0 || r0 >= kMinCoulombR0))
    throw Error(Errc::ValidationError, "coulomb r0 must be 0 or >= 0.25 bohr");
  if (!(r_max > r0)) throw Error(Errc::ValidationError, "coulomb r_max must exceed r0");
  return LongRangeModel(ModelKind::coulomb, r0, 0.0,
                        std::make_shared<const RadialGrid>(RadialGrid::sqrt_uniform(r_max, x_step, r0)));
}

double FGPair::max_wronskian_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(f[i] * g_prime[i] - f_prime[i] * g[i] - 1.0));
  return worst;
}

ChannelWave ChannelWave::scaled(double factor) const {
  ChannelWave out = *this;
  for (double& v : out.values) v *= factor;
  out.F_r0 *= factor;
  out.Fprime_r0 *= factor;
  out.norm2 *= factor * factor;
  return out;
}

void ChannelWave::strip() noexcept {
  values.clear();
  values.shrink_to_fit();
}

double reduce_half_turn(double theta) {
  double t = theta - kPi * std::round(theta / kPi);
  if (t <= -kPi / 2) t += kPi;
  if (t > kPi / 2) t -= kPi;
  return t;
}

double continuous_phase(const LongRangeModel& model, Channel /*channel*/, double eps) {
  require_closed(model, eps);
  if (model.kind() == ModelKind::coulomb) return -kPi * coulomb::effective_quantum_number(eps);
  return -std::sqrt(2.0 * eps) * model.wall_radius();
}

double theta_phase(const LongRangeModel& model, Channel channel, double eps) {
  if (model.kind() == ModelKind::coulomb) {
    require_closed(model, eps);
    const double nu = coulomb::effective_quantum_number(eps);
    return reduce_half_turn(-kPi * (nu - std::round(nu)));
  }
  return reduce_half_turn(continuous_phase(model, channel, eps));
}

double coulomb_r_max_for(double nu) { return 4.0 * nu * nu + 40.0 * nu + 50.0; }

FGPair milne_pair(const LongRangeModel& model, Channel channel, double eps) {
  require_closed(model, eps);
  const RadialGrid& grid = model.grid();
  FGPair out;
  out.channel = channel;
  out.energy = eps;

  if (model.kind() == ModelKind::hard_wall) {
    if (channel.l != 0) throw Error(Errc::InvalidArgument, "hard-wall model supports l = 0 only");
    const double k = std::sqrt(2.0 * eps);
    const double sk = std::sqrt(k);
    out.first_node = 0;
    for (double r : grid.nodes()) {
      out.f.push_back(std::sin(k * r) / sk);
      out.f_prime.push_back(sk * std::cos(k * r));
      out.g.push_back(-std::cos(k * r) / sk);
      out.g_prime.push_back(sk * std::sin(k * r));
    }
  } else {
    const auto cs = solve_coulomb(model, channel, eps);
    // irregular solution seeded from the Milne phase at r_m and r_m + h
    std::vector<double> vg(grid.size(), 0.0);
    for (std::size_t i : {cs.match, cs.match + 1}) {
      const auto g = cs.g_at(i, eps, channel.l);
      vg[i] = g.u / std::sqrt(cs.x(i));
    }
    numerov::propagate(cs.q, cs.h, vg, cs.match, cs.base - 1, true);
    out.first_node = cs.base;
    for (std::size_t i = cs.base; i <= cs.match; ++i) {
      const auto f = cs.f_at(i);
      const auto g = from_mesh(cs.x(i), vg[i], numerov::derivative(vg, cs.q, cs.h, i));
      out.f.push_back(f.u);
      out.f_prime.push_back(f.du);
      out.g.push_back(g.u);
      out.g_prime.push_back(g.du);
    }
  }
  out.f_r0 = out.f.front();
  out.f_deriv_r0 = out.f_prime.front();
  out.g_r0 = out.g.front();
  out.g_deriv_r0 = out.g_prime.front();
  return out;
}

ChannelWave channel_wave(const LongRangeModel& model, Channel channel, double eps, bool keep_samples) {
  require_closed(model, eps);
  const RadialGrid& grid = model.grid();
  ChannelWave out;
  out.channel = channel;
  out.energy = eps;
  out.r0 = model.r0();
  out.grid = model.grid_ptr();

  if (model.kind() == ModelKind::hard_wall) {
    if (channel.l != 0) throw Error(Errc::InvalidArgument, "hard-wall model supports l = 0 only");
    const double k = std::sqrt(2.0 * eps);
    const double sk = std::sqrt(k);
    out.theta = theta_phase(model, channel, eps);
    out.first_node = 0;
    out.values.reserve(grid.size());
    for (double r : grid.nodes()) out.values.push_back(std::sin(k * r + out.theta) / sk);
    out.F_r0 = std::sin(k * model.r0() + out.theta) / sk;
    out.Fprime_r0 = sk * std::cos(k * model.r0() + out.theta);
  } else {
    const auto cs = solve_coulomb(model, channel, eps);
    out.theta = cs.theta;
    if (model.r0() > 0.0) {
      out.first_node = model.r0_node();
      const auto F = cs.F_at(out.first_node);
      out.F_r0 = F.u;
      out.Fprime_r0 = F.du;
    } else {
      // Only regular waves reach the origin; fill r < kMinCoulombR0 with
      // cos(theta) f plus the constant limit of the irregular part.
      const double s = std::sin(cs.theta);
      const double c = std::cos(cs.theta);
      if (std::abs(s) > 1e-6 || (channel.l > 0 && std::abs(s) > 1e-8))
        throw Error(Errc::IrregularAtOrigin, "r0 = 0 needs a wave regular at the origin");
      out.first_node = 0;
      out.F_r0 = channel.l == 0 ? s / cs.lead : 0.0;
      out.Fprime_r0 = channel.l == 0 ? c * cs.lead : 0.0;
    }
    out.values.reserve(grid.size() - out.first_node);
    for (std::size_t i = out.first_node; i < grid.size(); ++i) {
      if (i == 0) {
        out.values.push_back(out.F_r0);
      } else if (i < cs.base) {
        const double irregular = channel.l == 0 ? std::sin(cs.theta) / cs.lead : 0.0;
        out.values.push_back(std::cos(cs.theta) * std::sqrt(cs.x(i)) * cs.vf[i] + irregular);
      } else {
        out.values.push_back(std::sqrt(cs.x(i)) * cs.vF[i]);
      }
    }
  }
  out.norm2 = channel_norm(out);
  if (!keep_samples) out.strip();
  return out;
}

double wronskian_overlap(const ChannelWave& w1, const ChannelWave& w2) {
  if (w1.channel.index != w2.channel.index || w1.channel.l != w2.channel.l)
    throw Error(Errc::ChannelMismatch, "overlap between different channels");
  if (w1.r0 != w2.r0) throw Error(Errc::GridMismatch, "waves have different r0");
  const double de = w2.energy - w1.energy;
  if (std::abs(de) <= 1e-12) throw Error(Errc::DegenerateEnergies, "energies within 1e-12; use quadrature");
  return (w1.F_r0 * w2.Fprime_r0 - w1.Fprime_r0 * w2.F_r0) / (2.0 * de);
}

double quadrature_overlap(const ChannelWave& w1, const ChannelWave& w2) {
  if (w1.channel.index != w2.channel.index)
    throw Error(Errc::ChannelMismatch, "overlap between different channels");
  if (!w1.grid || !w2.grid || !w1.grid->same_as(*w2.grid) || w1.first_node != w2.first_node ||
      w1.values.size() != w2.values.size() || !w1.has_samples())
    throw Error(Errc::GridMismatch, "waves are not sampled on the same grid range");
  std::vector<double> prod(w1.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = w1.values[i] * w2.values[i];
  return w1.grid->integrate(prod, w1.first_node);
}

double channel_norm(const ChannelWave& w) {
  if (!w.has_samples() || !w.grid) throw Error(Errc::GridMismatch, "channel wave has no samples");
  std::vector<double> sq(w.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = w.values[i] * w.values[i];
  return w.grid->integrate(sq, w.first_node);
}

}  // namespace qhbound
